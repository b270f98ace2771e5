use std::fmt::Write as _;

use layercraft::poset::Poset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Bottom-up DOT digraph, one node per element in index order and one
/// `rank=same` group per rank.
pub fn to_dot(p: &Poset) -> String {
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for x in 0..p.len() {
        let _ = writeln!(s, "  n{x} [label={}];", quote(p.label(x)));
    }
    for r in 0..=p.rank() {
        let same: Vec<String> = (0..p.len()).filter(|&x| p.rank_of(x) == r).map(|x| format!("n{x}")).collect();
        if same.len() > 1 {
            let _ = writeln!(s, "  {{ rank=same; {}; }}", same.join("; "));
        }
    }
    for x in 0..p.len() {
        for &y in p.up_covers(x) {
            let _ = writeln!(s, "  n{x} -> n{y};");
        }
    }
    s.push_str("}\n");
    s
}

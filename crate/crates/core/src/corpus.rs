//! Seeded random arrangements for property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{Arrangement, GroupKind};

#[derive(Clone, Debug)]
pub struct CorpusParams {
    pub max_dim: usize,
    pub max_characters: usize,
    pub max_entry: i64,
    /// `None` picks the group at random.
    pub group: Option<GroupKind>,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { max_dim: 3, max_characters: 4, max_entry: 2, group: None }
    }
}

pub fn random_arrangement(seed: u64, params: &CorpusParams) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let group = params.group.unwrap_or_else(|| if rng.gen_bool(0.5) { GroupKind::Torus } else { GroupKind::Real });
    let dim = rng.gen_range(1..=params.max_dim);
    let count = rng.gen_range(1..=params.max_characters);
    let mut vectors = Vec::with_capacity(count);
    while vectors.len() < count {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-params.max_entry..=params.max_entry)).collect();
        if v.iter().any(|&x| x != 0) {
            vectors.push(v);
        }
    }
    Arrangement::from_i64(group, dim, &vectors).expect("nonzero vectors of the right length")
}

/// `count` arrangements from consecutive seeds.
pub fn corpus(seed: u64, count: usize, params: &CorpusParams) -> Vec<Arrangement> {
    (0..count as u64).map(|i| random_arrangement(seed.wrapping_add(i), params)).collect()
}

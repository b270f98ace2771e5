use std::path::Path;

use layercraft::arrangement::{Arrangement, GroupKind};
use layercraft::fixtures;
use layercraft::poset::Poset;
use layercraft::rootsys::{self, LatticeKind, RootIdeal, RootType};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementSpec {
    pub group: GroupKind,
    pub dim: usize,
    pub characters: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealSpec {
    /// Only `"full"` is accepted.
    Keyword(String),
    Generators {
        generators: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootIdealSpec {
    #[serde(rename = "type")]
    pub ty: RootType,
    pub rank: usize,
    pub lattice: LatticeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupKind>,
    pub ideal: IdealSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension_p: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum InputSpec {
    Arrangement(ArrangementSpec),
    Poset(PosetSpec),
    RootIdeal(RootIdealSpec),
}

impl InputSpec {
    pub fn from_json(text: &str) -> Result<InputSpec, CliError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
        let obj = value.as_object().ok_or_else(|| CliError::Input("input must be a JSON object".into()))?;
        let kinds = [("characters", "arrangement"), ("elements", "poset"), ("type", "root-ideal")];
        let found: Vec<&str> = kinds.iter().filter(|(k, _)| obj.contains_key(*k)).map(|(_, n)| *n).collect();
        let bad = |kind: &str, e: serde_json::Error| CliError::Input(format!("{kind} spec: {e}"));
        match found.as_slice() {
            ["arrangement"] => serde_json::from_value(value).map(InputSpec::Arrangement).map_err(|e| bad("arrangement", e)),
            ["poset"] => serde_json::from_value(value).map(InputSpec::Poset).map_err(|e| bad("poset", e)),
            ["root-ideal"] => serde_json::from_value(value).map(InputSpec::RootIdeal).map_err(|e| bad("root-ideal", e)),
            [] => Err(CliError::Input("input has none of the keys \"characters\", \"elements\", \"type\"".into())),
            _ => Err(CliError::Input(format!("input mixes the {} schemas", found.join(" and ")))),
        }
    }

    pub fn from_path(path: &Path) -> Result<InputSpec, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        InputSpec::from_json(&text)
    }

    pub fn fixture(name: &str) -> Result<InputSpec, CliError> {
        let arrangement = |a: Arrangement| {
            InputSpec::Arrangement(ArrangementSpec {
                group: a.group,
                dim: a.dim,
                characters: a.characters.iter().map(|c| c.vector.iter().map(|x| i64::try_from(x).expect("small")).collect()).collect(),
                labels: Some(a.characters.iter().map(|c| c.label.clone()).collect()),
            })
        };
        match name {
            "b2-torus" => Ok(arrangement(fixtures::b2_torus())),
            "matrix-s-torus" => Ok(arrangement(fixtures::matrix_s(GroupKind::Torus))),
            "matrix-s-real" => Ok(arrangement(fixtures::matrix_s(GroupKind::Real))),
            _ => {
                let p = fixtures::named_poset(name).ok_or_else(|| {
                    CliError::Input(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", ")))
                })?;
                Ok(InputSpec::Poset(poset_spec(&p)))
            }
        }
    }
}

pub const FIXTURE_NAMES: [&str; 7] = ["b2", "d2", "pi3w", "ind-not-geo", "b2-torus", "matrix-s-torus", "matrix-s-real"];

pub fn poset_spec(p: &Poset) -> PosetSpec {
    let covers = (0..p.len()).flat_map(|x| p.up_covers(x).iter().map(move |&y| (p.label(x).to_string(), p.label(y).to_string()))).collect();
    PosetSpec { elements: p.labels().to_vec(), covers }
}

impl ArrangementSpec {
    pub fn build(&self) -> Result<Arrangement, CliError> {
        let vectors = self.characters.iter().map(|c| layercraft::intlat::big_vec(c)).collect();
        Arrangement::new(self.group, self.dim, vectors, self.labels.clone()).map_err(|e| CliError::Input(e.to_string()))
    }
}

impl PosetSpec {
    pub fn build(&self) -> Result<Poset, CliError> {
        Poset::from_labeled(&self.elements, &self.covers.iter().map(|(a, b)| (a.clone(), b.clone())).collect::<Vec<_>>())
            .map_err(|e| CliError::Input(e.to_string()))
    }
}

impl RootIdealSpec {
    pub fn group(&self) -> GroupKind {
        self.group.unwrap_or(GroupKind::Torus)
    }

    pub fn build(&self) -> Result<RootIdeal, CliError> {
        let err = |e: rootsys::RootError| CliError::Input(e.to_string());
        let ideal = match &self.ideal {
            IdealSpec::Keyword(k) if k == "full" => rootsys::full_system(self.ty, self.rank).map_err(err)?,
            IdealSpec::Keyword(k) => return Err(CliError::Input(format!("ideal must be \"full\" or {{\"generators\": [...]}}, got {k:?}"))),
            IdealSpec::Generators { generators } => {
                let gens = generators
                    .iter()
                    .map(|g| rootsys::parse_root_expr(g, self.rank).map_err(|e| CliError::Input(format!("generator {g:?}: {e}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                rootsys::ideal_closure(self.ty, self.rank, &gens).map_err(err)?
            }
        };
        match self.extension_p {
            None => Ok(ideal),
            Some(_) if self.ty != RootType::B => Err(CliError::Input("extension_p applies to type B only".into())),
            Some(p) => ideal.extension(p).map_err(err),
        }
    }
}

//! JSON instance files: semigroups, T-modules and cochains.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use isgcoh::cochain::{Cochain, CochainError};
use isgcoh::semigroup::{FiniteInverseSemigroup, SemigroupError};
use isgcoh::tmodule::{GroupComponent, ModuleError, SemilatticeOfAbelianGroups, TModule};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: unknown {what} {name:?}")]
    UnknownName {
        path: String,
        what: &'static str,
        name: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{path}: {source}")]
    Semigroup {
        path: String,
        source: SemigroupError,
    },
    #[error("{path}: {source}")]
    Module { path: String, source: ModuleError },
    #[error("{path}: {source}")]
    Cochain { path: String, source: CochainError },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Entry {
    Index(usize),
    Name(String),
}

/// `{"elements": [...], "table": [[...]]}`; entries are indices or names.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    elements: Vec<String>,
    table: Vec<Vec<Entry>>,
}

/// Either `components` (one group per idempotent of T, glued by optional
/// `transport` maps `"e>f": {x: y}`) or a whole `coefficients` table.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    theta: BTreeMap<String, String>,
    #[serde(default)]
    components: Option<BTreeMap<String, TableSpec>>,
    #[serde(default)]
    transport: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    coefficients: Option<TableSpec>,
    eta: BTreeMap<String, BTreeMap<String, String>>,
}

/// `{"degree": n, "entries": {"s1,s2,s3": "a"}}`; missing entries are the
/// component identity.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CochainSpec {
    pub degree: usize,
    #[serde(default)]
    pub entries: BTreeMap<String, String>,
}

impl CochainSpec {
    pub fn render(module: &TModule, c: &Cochain) -> Self {
        Self {
            degree: c.degree(),
            entries: module.render_cochain(c),
        }
    }
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn decode<T: for<'de> Deserialize<'de>>(path: &str, text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

impl TableSpec {
    fn resolve(&self, path: &str) -> Result<Vec<Vec<usize>>, FormatError> {
        self.table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| match entry {
                        Entry::Index(i) => Ok(*i),
                        Entry::Name(n) => {
                            self.elements.iter().position(|e| e == n).ok_or_else(|| {
                                FormatError::UnknownName {
                                    path: path.to_string(),
                                    what: "element",
                                    name: n.clone(),
                                }
                            })
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn build(&self, path: &str) -> Result<FiniteInverseSemigroup, FormatError> {
        FiniteInverseSemigroup::new(self.elements.clone(), self.resolve(path)?).map_err(|source| {
            FormatError::Semigroup {
                path: path.to_string(),
                source,
            }
        })
    }
}

pub fn parse_semigroup(path: &str, text: &str) -> Result<FiniteInverseSemigroup, FormatError> {
    decode::<TableSpec>(path, text)?.build(path)
}

pub fn load_semigroup(path: &Path) -> Result<FiniteInverseSemigroup, FormatError> {
    parse_semigroup(&path.display().to_string(), &read(path)?)
}

fn lookup(
    path: &str,
    what: &'static str,
    name: &str,
    find: impl FnOnce(&str) -> Option<usize>,
) -> Result<usize, FormatError> {
    find(name).ok_or_else(|| FormatError::UnknownName {
        path: path.to_string(),
        what,
        name: name.to_string(),
    })
}

fn invalid(path: &str, message: impl Into<String>) -> FormatError {
    FormatError::Invalid {
        path: path.to_string(),
        message: message.into(),
    }
}

fn coefficients_from_components(
    path: &str,
    t: &FiniteInverseSemigroup,
    spec: &ModuleSpec,
    components: &BTreeMap<String, TableSpec>,
) -> Result<SemilatticeOfAbelianGroups, FormatError> {
    let es = t.idempotents();
    for key in components.keys() {
        let e = lookup(path, "element of T", key, |n| t.index_of(n))?;
        if !t.is_idempotent(e) {
            return Err(invalid(
                path,
                format!("component key {key:?} is not idempotent in T"),
            ));
        }
    }
    let mut groups = Vec::with_capacity(es.len());
    for &e in es {
        let spec = components
            .get(t.name(e))
            .ok_or_else(|| invalid(path, format!("no component for idempotent {:?}", t.name(e))))?;
        groups.push(GroupComponent {
            elements: spec.elements.clone(),
            table: spec.resolve(path)?,
        });
    }
    let position = |x: usize| es.iter().position(|&e| e == x).expect("idempotent");
    let meet = |i: usize, j: usize| position(t.mul(es[i], es[j]));
    let mut transport = BTreeMap::new();
    for (key, map) in &spec.transport {
        let (from, to) = key.split_once('>').ok_or_else(|| {
            invalid(
                path,
                format!("transport key {key:?} is not of the form \"e>f\""),
            )
        })?;
        let from = position_of(path, t, es, from.trim())?;
        let to = position_of(path, t, es, to.trim())?;
        let (source, target) = (&groups[from].elements, &groups[to].elements);
        let table = source
            .iter()
            .map(|x| {
                let y = map
                    .get(x)
                    .ok_or_else(|| invalid(path, format!("transport {key:?} misses {x:?}")))?;
                lookup(path, "component element", y, |n| {
                    target.iter().position(|z| z == n)
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        transport.insert((from, to), table);
    }
    SemilatticeOfAbelianGroups::from_components(&groups, meet, &transport).map_err(|source| {
        FormatError::Module {
            path: path.to_string(),
            source,
        }
    })
}

fn position_of(
    path: &str,
    t: &FiniteInverseSemigroup,
    es: &[usize],
    name: &str,
) -> Result<usize, FormatError> {
    let e = lookup(path, "element of T", name, |n| t.index_of(n))?;
    es.iter()
        .position(|&x| x == e)
        .ok_or_else(|| invalid(path, format!("{name:?} is not idempotent in T")))
}

pub fn parse_module(
    path: &str,
    text: &str,
    t: &FiniteInverseSemigroup,
) -> Result<TModule, FormatError> {
    let spec: ModuleSpec = decode(path, text)?;
    let a = match (&spec.components, &spec.coefficients) {
        (Some(components), None) => coefficients_from_components(path, t, &spec, components)?,
        (None, Some(table)) => {
            if !spec.transport.is_empty() {
                return Err(invalid(path, "transport applies only to components"));
            }
            SemilatticeOfAbelianGroups::new(table.build(path)?).map_err(|source| {
                FormatError::Module {
                    path: path.to_string(),
                    source,
                }
            })?
        }
        _ => {
            return Err(invalid(
                path,
                "give exactly one of \"components\" and \"coefficients\"",
            ))
        }
    };
    for key in spec.theta.keys() {
        lookup(path, "element of T", key, |n| t.index_of(n))?;
    }
    let mut theta = Vec::with_capacity(t.len());
    for s in t.elements() {
        let image = match spec.theta.get(t.name(s)) {
            Some(name) => Some(lookup(path, "element of A", name, |n| {
                a.semigroup().index_of(n)
            })?),
            None => None,
        };
        theta.push(image);
    }
    for key in spec.eta.keys() {
        lookup(path, "element of T", key, |n| t.index_of(n))?;
    }
    let mut eta = Vec::with_capacity(t.len());
    for s in t.elements() {
        let map = spec
            .eta
            .get(t.name(s))
            .ok_or_else(|| invalid(path, format!("eta misses {:?}", t.name(s))))?;
        let row = a
            .elements()
            .map(|x| {
                let y = map.get(a.name(x)).ok_or_else(|| {
                    invalid(path, format!("eta[{:?}] misses {:?}", t.name(s), a.name(x)))
                })?;
                lookup(path, "element of A", y, |n| a.semigroup().index_of(n))
            })
            .collect::<Result<Vec<_>, _>>()?;
        eta.push(row);
    }
    TModule::new(t.clone(), a, theta, eta).map_err(|source| FormatError::Module {
        path: path.to_string(),
        source,
    })
}

pub fn load_module(path: &Path, t: &FiniteInverseSemigroup) -> Result<TModule, FormatError> {
    parse_module(&path.display().to_string(), &read(path)?, t)
}

pub fn parse_cochain(path: &str, text: &str, module: &TModule) -> Result<Cochain, FormatError> {
    let spec: CochainSpec = decode(path, text)?;
    let (t, a) = (module.base(), module.coefficients());
    let mut given = BTreeMap::new();
    for (key, value) in &spec.entries {
        let tuple = split_arguments(key)
            .into_iter()
            .map(|n| lookup(path, "element of T", n.trim(), |n| t.index_of(n)))
            .collect::<Result<Vec<_>, _>>()?;
        if tuple.len() != spec.degree {
            return Err(invalid(
                path,
                format!(
                    "entry {key:?} has {} arguments, degree is {}",
                    tuple.len(),
                    spec.degree
                ),
            ));
        }
        let v = lookup(path, "element of A", value, |n| a.semigroup().index_of(n))?;
        given.insert(tuple, v);
    }
    module
        .cochain_from_fn(spec.degree, |x| {
            given.get(x).copied().unwrap_or_else(|| module.target(x))
        })
        .map_err(|source| FormatError::Cochain {
            path: path.to_string(),
            source,
        })
}

/// Splits `x,y,z` on commas outside brackets, so names such as `(g,e)` survive.
fn split_arguments(key: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in key.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&key[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&key[start..]);
    parts
}

pub fn load_cochain(path: &Path, module: &TModule) -> Result<Cochain, FormatError> {
    parse_cochain(&path.display().to_string(), &read(path)?, module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use isgcoh::fixtures;

    const Z2: &str = r#"{"elements": ["1", "g"], "table": [[0, 1], [1, 0]]}"#;
    const Z2_MODULE: &str = r#"{
        "theta": {"1": "1"},
        "components": {"1": {"elements": ["1", "a"], "table": [["1", "a"], ["a", "1"]]}},
        "eta": {"1": {"1": "1", "a": "a"}, "g": {"1": "1", "a": "a"}}
    }"#;

    #[test]
    fn arguments_split_outside_brackets() {
        assert_eq!(split_arguments("g,g,1"), ["g", "g", "1"]);
        assert_eq!(split_arguments("(g,e),(1,f)"), ["(g,e)", "(1,f)"]);
        assert_eq!(split_arguments("x"), ["x"]);
    }

    #[test]
    fn z2_bundle_matches_fixture() {
        let t = parse_semigroup("z2", Z2).unwrap();
        assert_eq!(t, fixtures::z2());
        let m = parse_module("m", Z2_MODULE, &t).unwrap();
        assert_eq!(m, fixtures::z2_trivial_module());
        let c = parse_cochain("c", r#"{"degree": 3, "entries": {"g,g,g": "a"}}"#, &m).unwrap();
        assert_eq!(
            CochainSpec::render(&m, &c)
                .entries
                .get("g,g,g")
                .map(String::as_str),
            Some("a")
        );
    }

    #[test]
    fn chain_with_transport_matches_fixture() {
        let t = parse_semigroup(
            "c",
            r#"{"elements": ["e", "f"], "table": [["e", "f"], ["f", "f"]]}"#,
        )
        .unwrap();
        assert_eq!(t, fixtures::chain2());
        let text = r#"{
            "theta": {"e": "1_e", "f": "1_f"},
            "components": {
                "e": {"elements": ["1_e", "a"], "table": [[0, 1], [1, 0]]},
                "f": {"elements": ["1_f"], "table": [[0]]}
            },
            "transport": {"e>f": {"1_e": "1_f", "a": "1_f"}},
            "eta": {"e": {"1_e": "1_e", "a": "a", "1_f": "1_f"}, "f": {"1_e": "1_f", "a": "1_f", "1_f": "1_f"}}
        }"#;
        assert_eq!(
            parse_module("m", text, &t).unwrap(),
            fixtures::chain2_module()
        );
        let bad = text.replace("\"e>f\"", "\"f>e\"");
        assert!(parse_module("m", &bad, &t).is_err());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_semigroup("bad", "{\n  \"elements\": [\"1\",\n}") {
            Err(FormatError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_associative_table_names_a_triple() {
        let text = r#"{"elements": ["x", "y"], "table": [[1, 0], [0, 0]]}"#;
        let err = parse_semigroup("t", text).unwrap_err();
        assert!(
            matches!(
                err,
                FormatError::Semigroup {
                    source: SemigroupError::NotAssociative { .. },
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn unknown_names_are_reported() {
        let t = parse_semigroup("z2", Z2).unwrap();
        let m = parse_module("m", Z2_MODULE, &t).unwrap();
        let err =
            parse_cochain("c", r#"{"degree": 3, "entries": {"g,h,g": "a"}}"#, &m).unwrap_err();
        assert!(
            matches!(err, FormatError::UnknownName { ref name, .. } if name == "h"),
            "{err}"
        );
    }
}

//! JSON description files: monoids (`.mon`), finite semimetric spaces,
//! point maps and partitions.
//!
//! Rationals are written as integers or `"p/q"` strings; `null` is ∞.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::geometry::{FiniteSemimetricSpace, PointMap, SpaceError};
use crate::monoid::{Backend, Element, Generator, Monoid, MonoidError};
use crate::rational::{format_q, parse_q, Dist, Q};
use crate::rewrite::{Alphabet, RewritingSystem, Rule};

#[derive(Debug, Error)]
pub enum DescriptionError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    /// Syntax or schema error; the message carries line and column.
    #[error("{context}: {source}")]
    Parse { context: String, source: serde_json::Error },
    #[error("{context}: {source}")]
    Monoid { context: String, source: MonoidError },
    #[error("{context}: {source}")]
    Space { context: String, source: SpaceError },
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
}

/// Sub-description of a product: inline, or a path relative to the parent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubDescription {
    Path(String),
    Inline(Box<MonoidDescription>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformationGenerator {
    pub name: String,
    pub images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MonoidKind {
    Rewriting {
        alphabet: Vec<String>,
        rules: Vec<(String, String)>,
    },
    Transformation {
        degree: usize,
        generators: Vec<TransformationGenerator>,
    },
    Table {
        elements: Vec<String>,
        table: Vec<Vec<String>>,
        #[serde(default)]
        identity: Option<String>,
        generators: Vec<String>,
    },
    Product {
        left: SubDescription,
        right: SubDescription,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonoidDescription {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub kind: MonoidKind,
    /// Replaces the default generators with these elements (canonical
    /// names or words), in order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generating_set: Option<Vec<String>>,
}

pub fn parse_monoid_description(text: &str, context: &str) -> Result<MonoidDescription, DescriptionError> {
    serde_json::from_str(text).map_err(|source| DescriptionError::Parse { context: context.to_string(), source })
}

/// Parses and builds a monoid. `base_dir` resolves product sub-paths.
pub fn parse_monoid(text: &str, context: &str, base_dir: Option<&Path>) -> Result<Monoid, DescriptionError> {
    let desc = parse_monoid_description(text, context)?;
    build_monoid(&desc, context, base_dir)
}

pub fn load_monoid(path: &Path) -> Result<Monoid, DescriptionError> {
    let text = read(path)?;
    parse_monoid(&text, &path.display().to_string(), path.parent())
}

fn read(path: &Path) -> Result<String, DescriptionError> {
    fs::read_to_string(path).map_err(|source| DescriptionError::Io { path: path.display().to_string(), source })
}

pub fn build_monoid(
    desc: &MonoidDescription,
    context: &str,
    base_dir: Option<&Path>,
) -> Result<Monoid, DescriptionError> {
    let merr = |source| DescriptionError::Monoid { context: context.to_string(), source };
    let monoid = match &desc.kind {
        MonoidKind::Rewriting { alphabet, rules } => {
            let alphabet = Alphabet::new(alphabet).map_err(|e| merr(e.into()))?;
            let rules = rules
                .iter()
                .map(|(l, r)| Ok(Rule { lhs: alphabet.parse_word(l)?, rhs: alphabet.parse_word(r)? }))
                .collect::<Result<Vec<_>, crate::rewrite::RewriteError>>()
                .map_err(|e| merr(e.into()))?;
            let rs = RewritingSystem::new(alphabet, rules).map_err(|e| merr(e.into()))?;
            Monoid::rewriting(rs).map_err(merr)?
        }
        MonoidKind::Transformation { degree, generators } => {
            Monoid::transformation(*degree, generators.iter().map(|g| (g.name.clone(), g.images.clone())).collect())
                .map_err(merr)?
        }
        MonoidKind::Table { elements, table, identity, generators } => {
            let lookup: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
            let find = |s: &str| {
                lookup.get(s).copied().ok_or_else(|| DescriptionError::Invalid {
                    context: context.to_string(),
                    message: format!("unknown table element {s:?}"),
                })
            };
            let rows = table
                .iter()
                .map(|row| row.iter().map(|s| find(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let identity = identity.as_deref().map(find).transpose()?;
            let gens = generators.iter().map(|s| find(s)).collect::<Result<Vec<_>, _>>()?;
            Monoid::table(elements.clone(), rows, identity, gens).map_err(merr)?
        }
        MonoidKind::Product { left, right } => {
            let l = build_sub(left, context, base_dir)?;
            let r = build_sub(right, context, base_dir)?;
            Monoid::direct_product(&l, &r)
        }
    };
    match &desc.generating_set {
        None => Ok(monoid),
        Some(names) => {
            let gens = names
                .iter()
                .map(|n| Ok(Generator { name: n.clone(), element: monoid.parse_element(n)? }))
                .collect::<Result<Vec<_>, MonoidError>>()
                .map_err(merr)?;
            monoid.with_generators(gens).map_err(merr)
        }
    }
}

fn build_sub(sub: &SubDescription, context: &str, base_dir: Option<&Path>) -> Result<Monoid, DescriptionError> {
    match sub {
        SubDescription::Inline(d) => build_monoid(d, context, base_dir),
        SubDescription::Path(p) => {
            let path: PathBuf = match base_dir {
                Some(dir) => dir.join(p),
                None => PathBuf::from(p),
            };
            load_monoid(&path)
        }
    }
}

/// Serializes a monoid back to a description (products inline).
pub fn describe_monoid(m: &Monoid) -> MonoidDescription {
    let kind = match m.backend() {
        Backend::Rewriting(rs) => MonoidKind::Rewriting {
            alphabet: rs.alphabet().symbols().to_vec(),
            rules: rs
                .rules()
                .iter()
                .map(|r| (rs.alphabet().render_plain(&r.lhs), rs.alphabet().render_plain(&r.rhs)))
                .collect(),
        },
        Backend::Transformation { degree } => MonoidKind::Transformation {
            degree: *degree,
            generators: m
                .generators()
                .iter()
                .map(|g| TransformationGenerator {
                    name: g.name.clone(),
                    images: match &g.element {
                        Element::Map(v) => v.iter().map(|&i| i as usize).collect(),
                        _ => unreachable!(),
                    },
                })
                .collect(),
        },
        Backend::Table(t) => {
            // adjoined identities are dropped and re-adjoined on load
            let keep: Vec<usize> = (0..t.names.len()).filter(|&i| !(t.adjoined_identity && i == t.identity)).collect();
            let n = t.names.len();
            MonoidKind::Table {
                elements: keep.iter().map(|&i| t.names[i].clone()).collect(),
                table: keep
                    .iter()
                    .map(|&x| keep.iter().map(|&y| t.names[t.table[x * n + y]].clone()).collect())
                    .collect(),
                identity: (!t.adjoined_identity).then(|| t.names[t.identity].clone()),
                generators: m.generators().iter().map(|g| g.name.clone()).collect(),
            }
        }
        Backend::Product(a, b) => MonoidKind::Product {
            left: SubDescription::Inline(Box::new(describe_monoid(a))),
            right: SubDescription::Inline(Box::new(describe_monoid(b))),
        },
    };
    let plain = MonoidDescription { name: None, kind, generating_set: None };
    let default_generators = build_monoid(&plain, "", None).ok();
    if default_generators.is_some_and(|d| d.generators() == m.generators()) {
        return plain;
    }
    let names = m.generators().iter().map(|g| m.render(&g.element)).collect();
    MonoidDescription { generating_set: Some(names), ..plain }
}

pub fn monoid_to_json(m: &Monoid) -> String {
    serde_json::to_string_pretty(&describe_monoid(m)).expect("descriptions serialize")
}

fn dist_to_value(d: &Dist) -> Value {
    match d {
        Dist::Infinite => Value::Null,
        Dist::Finite(v) if v.is_integer() => Value::from(*v.numer()),
        Dist::Finite(v) => Value::String(format_q(v)),
    }
}

fn value_to_dist(v: &Value) -> Option<Dist> {
    match v {
        Value::Null => Some(Dist::Infinite),
        Value::Number(n) => n.as_i64().map(|i| Dist::Finite(Q::from_integer(i))),
        Value::String(s) => parse_q(s).ok().map(Dist::Finite),
        _ => None,
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceFile {
    points: Vec<String>,
    dist: Vec<Vec<Value>>,
}

/// Parses and validates a space file.
pub fn parse_space(text: &str, context: &str) -> Result<FiniteSemimetricSpace, DescriptionError> {
    let file: SpaceFile = serde_json::from_str(text)
        .map_err(|source| DescriptionError::Parse { context: context.to_string(), source })?;
    let invalid = |message: String| DescriptionError::Invalid { context: context.to_string(), message };
    let mut dist = Vec::with_capacity(file.dist.len());
    for (i, row) in file.dist.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, v) in row.iter().enumerate() {
            out.push(
                value_to_dist(v)
                    .ok_or_else(|| invalid(format!("dist[{i}][{j}]: expected integer, \"p/q\" or null")))?,
            );
        }
        dist.push(out);
    }
    FiniteSemimetricSpace::new(file.points, dist)
        .map_err(|source| DescriptionError::Space { context: context.to_string(), source })
}

pub fn load_space(path: &Path) -> Result<FiniteSemimetricSpace, DescriptionError> {
    parse_space(&read(path)?, &path.display().to_string())
}

pub fn space_to_json(x: &FiniteSemimetricSpace) -> String {
    let file = SpaceFile {
        points: x.names().to_vec(),
        dist: (0..x.len()).map(|i| (0..x.len()).map(|j| dist_to_value(&x.d(i, j))).collect()).collect(),
    };
    let rows: Vec<String> = file.dist.iter().map(|r| serde_json::to_string(r).expect("rows serialize")).collect();
    format!(
        "{{\n  \"points\": {},\n  \"dist\": [\n    {}\n  ]\n}}\n",
        serde_json::to_string(&file.points).expect("names serialize"),
        rows.join(",\n    ")
    )
}

/// Map file: JSON array of target point names, indexed by source order.
pub fn parse_map(
    text: &str,
    context: &str,
    source: &FiniteSemimetricSpace,
    target: &FiniteSemimetricSpace,
) -> Result<PointMap, DescriptionError> {
    let names: Vec<String> =
        serde_json::from_str(text).map_err(|e| DescriptionError::Parse { context: context.to_string(), source: e })?;
    let invalid = |message: String| DescriptionError::Invalid { context: context.to_string(), message };
    if names.len() != source.len() {
        return Err(invalid(format!("map has {} entries, source has {} points", names.len(), source.len())));
    }
    let images = names
        .iter()
        .map(|n| target.position(n).ok_or_else(|| invalid(format!("unknown target point {n:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PointMap::new(images))
}

pub fn load_map(
    path: &Path,
    source: &FiniteSemimetricSpace,
    target: &FiniteSemimetricSpace,
) -> Result<PointMap, DescriptionError> {
    parse_map(&read(path)?, &path.display().to_string(), source, target)
}

pub fn map_to_json(f: &PointMap, target: &FiniteSemimetricSpace) -> String {
    let names: Vec<&str> = f.images().iter().map(|&i| target.names()[i].as_str()).collect();
    serde_json::to_string(&names).expect("names serialize")
}

/// Partition file: JSON array of classes, each an array of element names.
pub fn parse_partition(text: &str, context: &str, m: &Monoid) -> Result<Vec<Vec<Element>>, DescriptionError> {
    let classes: Vec<Vec<String>> = serde_json::from_str(text)
        .map_err(|source| DescriptionError::Parse { context: context.to_string(), source })?;
    classes
        .iter()
        .map(|c| {
            c.iter()
                .map(|n| m.parse_element(n))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|source| DescriptionError::Monoid { context: context.to_string(), source })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::builtin;

    #[test]
    fn builtins_round_trip() {
        for (name, text) in builtin::SOURCES {
            let m = parse_monoid(text, name, None).unwrap();
            let again = parse_monoid(&monoid_to_json(&m), name, None).unwrap();
            assert_eq!(m, again, "{name}");
        }
    }

    #[test]
    fn parse_errors_are_positioned() {
        let err = parse_monoid("{\n  \"kind\": \"rewriting\",\n  \"alphabet\": [\"a\"\n}", "x.mon", None).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{msg}");
        assert!(msg.contains("column"), "{msg}");
    }

    #[test]
    fn unknown_kind_is_rejected() {
        assert!(parse_monoid(r#"{"kind":"group"}"#, "x", None).is_err());
    }

    #[test]
    fn space_file_round_trip() {
        let text = r#"{"points":["x","y"],"dist":[[0,"1/2"],[null,0]]}"#;
        let x = parse_space(text, "s").unwrap();
        assert_eq!(x.d(0, 1), Dist::Finite(Q::new(1, 2)));
        assert_eq!(x.d(1, 0), Dist::Infinite);
        let again = parse_space(&space_to_json(&x), "s").unwrap();
        assert_eq!(x, again);
    }

    #[test]
    fn invalid_space_is_rejected() {
        let text = r#"{"points":["x","y"],"dist":[[0,0],[0,0]]}"#;
        assert!(matches!(parse_space(text, "s"), Err(DescriptionError::Space { .. })));
        let text = r#"{"points":["x"],"dist":[[true]]}"#;
        assert!(matches!(parse_space(text, "s"), Err(DescriptionError::Invalid { .. })));
    }

    #[test]
    fn map_file() {
        let x = parse_space(r#"{"points":["u","v"],"dist":[[0,1],[1,0]]}"#, "x").unwrap();
        let y = parse_space(r#"{"points":["p"],"dist":[[0]]}"#, "y").unwrap();
        let f = parse_map(r#"["p","p"]"#, "f", &x, &y).unwrap();
        assert_eq!(f.images(), [0, 0]);
        assert_eq!(map_to_json(&f, &y), r#"["p","p"]"#);
        assert!(parse_map(r#"["q","p"]"#, "f", &x, &y).is_err());
    }
}

//! Gadget sidecar files.
//!
//! For an output prefix `P` the writer produces `P.graph`, `P.roles` (one
//! `vertex role source-id gadget-id` line per vertex, `-` for an absent field),
//! `P.manifest` (a single `key=value` line) and `P.setcover` (the source
//! instance, needed to check covers later).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{parse_err, KCenterError, Result};
use crate::gadget::{Construction, GadgetOutput, Role, SetCoverInstance};
use crate::graph::{Dist, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub yes_radius: Dist,
    pub center_budget: usize,
    pub construction: Construction,
    pub ell: usize,
    pub k: usize,
    pub gadgets: usize,
}

impl Manifest {
    pub fn of(gout: &GadgetOutput) -> Self {
        Self {
            yes_radius: gout.predicted_yes_radius,
            center_budget: gout.center_budget,
            construction: gout.construction,
            ell: gout.ell,
            k: gout.k,
            gadgets: gout.gadget_count(),
        }
    }

    pub fn to_line(&self) -> String {
        let t = match self.construction {
            Construction::Simple => "-".to_string(),
            Construction::Recursive { t } => t.to_string(),
        };
        format!(
            "yes_radius={} center_budget={} construction={} t={} ell={} k={} gadgets={}",
            self.yes_radius, self.center_budget, self.construction, t, self.ell, self.k, self.gadgets
        )
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let mut kv = BTreeMap::new();
        for tok in line.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| parse_err(1, format!("expected key=value, found `{tok}`")))?;
            kv.insert(k, v);
        }
        let get = |key: &str| kv.get(key).copied().ok_or_else(|| parse_err(1, format!("missing `{key}`")));
        let num = |key: &str| -> Result<u64> {
            let v = get(key)?;
            v.parse().map_err(|_| parse_err(1, format!("bad value `{v}` for `{key}`")))
        };
        let construction = match get("construction")? {
            "simple" => Construction::Simple,
            "recursive" => Construction::Recursive { t: num("t")? as usize },
            other => return Err(parse_err(1, format!("unknown construction `{other}`"))),
        };
        Ok(Self {
            yes_radius: num("yes_radius")?,
            center_budget: num("center_budget")? as usize,
            construction,
            ell: num("ell")? as usize,
            k: num("k")? as usize,
            gadgets: num("gadgets")? as usize,
        })
    }
}

fn role_fields(role: &Role) -> (&'static str, Option<usize>, Option<usize>) {
    match *role {
        Role::ACopy { a, gadget } => ("a-copy", Some(a), Some(gadget)),
        Role::BCopy { b, gadget } => ("b-copy", Some(b), Some(gadget)),
        Role::Hub { gadget } => ("hub", None, Some(gadget)),
        Role::PathInternal { gadget } => ("path", None, Some(gadget)),
        Role::Tail { b } => ("tail", Some(b), None),
    }
}

pub fn roles_to_text(roles: &[Role]) -> String {
    let dash = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
    let mut out = String::new();
    for (v, role) in roles.iter().enumerate() {
        let (name, src, gid) = role_fields(role);
        let _ = writeln!(out, "{v} {name} {} {}", dash(src), dash(gid));
    }
    out
}

pub fn parse_roles(text: &str) -> Result<Vec<Role>> {
    let mut roles = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(parse_err(ln, "expected `vertex role source-id gadget-id`"));
        }
        let field = |s: &str| -> Result<Option<usize>> {
            if s == "-" {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|_| parse_err(ln, format!("bad field `{s}`")))
            }
        };
        let v = field(toks[0])?.ok_or_else(|| parse_err(ln, "missing vertex id"))?;
        if v != roles.len() {
            return Err(parse_err(ln, format!("expected vertex {}, found {v}", roles.len())));
        }
        let (src, gid) = (field(toks[2])?, field(toks[3])?);
        let role = match (toks[1], src, gid) {
            ("a-copy", Some(a), Some(gadget)) => Role::ACopy { a, gadget },
            ("b-copy", Some(b), Some(gadget)) => Role::BCopy { b, gadget },
            ("hub", None, Some(gadget)) => Role::Hub { gadget },
            ("path", None, Some(gadget)) => Role::PathInternal { gadget },
            ("tail", Some(b), None) => Role::Tail { b },
            _ => return Err(parse_err(ln, format!("malformed role line `{line}`"))),
        };
        roles.push(role);
    }
    Ok(roles)
}

/// `prefix` with `.ext` appended (not replacing any existing extension).
pub fn sidecar(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

pub fn write_gadget_files(prefix: &Path, gout: &GadgetOutput, sc: &SetCoverInstance) -> Result<()> {
    std::fs::write(sidecar(prefix, "graph"), gout.graph.to_text())?;
    std::fs::write(sidecar(prefix, "roles"), roles_to_text(&gout.roles))?;
    std::fs::write(sidecar(prefix, "manifest"), Manifest::of(gout).to_line() + "\n")?;
    std::fs::write(sidecar(prefix, "setcover"), sc.to_text())?;
    Ok(())
}

/// Loads the files written by [`write_gadget_files`] given the manifest path
/// (`P.manifest`) or the bare prefix `P`.
pub fn read_gadget_files(path: &Path) -> Result<(GadgetOutput, SetCoverInstance)> {
    let prefix = match path.to_str().and_then(|s| s.strip_suffix(".manifest")) {
        Some(p) => PathBuf::from(p),
        None => path.to_path_buf(),
    };
    let manifest_text = std::fs::read_to_string(sidecar(&prefix, "manifest"))?;
    let manifest = Manifest::parse_line(manifest_text.trim())?;
    let graph = Graph::read_file(sidecar(&prefix, "graph"))?;
    let roles = parse_roles(&std::fs::read_to_string(sidecar(&prefix, "roles"))?)?;
    let sc = SetCoverInstance::read_file(sidecar(&prefix, "setcover"))?;
    if roles.len() != graph.n() {
        return Err(KCenterError::InvalidInstance(format!(
            "role table has {} entries for {} vertices",
            roles.len(),
            graph.n()
        )));
    }
    let gout = GadgetOutput {
        graph,
        roles,
        predicted_yes_radius: manifest.yes_radius,
        center_budget: manifest.center_budget,
        construction: manifest.construction,
        ell: manifest.ell,
        k: manifest.k,
    };
    Ok((gout, sc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::{gen_recursive_lb, gen_simple_lb, DEFAULT_GADGET_BUDGET};

    #[test]
    fn roles_round_trip() {
        let sc = SetCoverInstance::new(2, vec![vec![0], vec![1]]).unwrap();
        let g = gen_recursive_lb(&sc, 2, 2, 1, DEFAULT_GADGET_BUDGET).unwrap();
        let text = roles_to_text(&g.roles);
        assert!(text.starts_with("0 a-copy 0 0\n"));
        assert_eq!(parse_roles(&text).unwrap(), g.roles);
        assert!(parse_roles("0 hub 1 0\n").is_err());
        assert!(parse_roles("1 hub - 0\n").is_err());
    }

    #[test]
    fn manifest_round_trip() {
        let sc = SetCoverInstance::new(2, vec![vec![0], vec![1]]).unwrap();
        for g in [
            gen_simple_lb(&sc, 2, 3).unwrap(),
            gen_recursive_lb(&sc, 2, 3, 1, DEFAULT_GADGET_BUDGET).unwrap(),
        ] {
            let m = Manifest::of(&g);
            assert_eq!(Manifest::parse_line(&m.to_line()).unwrap(), m);
        }
        let m = Manifest::of(&gen_recursive_lb(&sc, 2, 1, 2, DEFAULT_GADGET_BUDGET).unwrap());
        assert!(m.to_line().starts_with("yes_radius=6 center_budget=3 "));
        assert!(Manifest::parse_line("yes_radius=1").is_err());
    }

    #[test]
    fn files_round_trip() {
        let dir = std::env::temp_dir().join(format!("kcenter-gadget-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let sc = SetCoverInstance::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let g = gen_recursive_lb(&sc, 2, 2, 1, DEFAULT_GADGET_BUDGET).unwrap();
        let prefix = dir.join("inst");
        write_gadget_files(&prefix, &g, &sc).unwrap();
        let (back, sc2) = read_gadget_files(&sidecar(&prefix, "manifest")).unwrap();
        assert_eq!(back, g);
        assert_eq!(sc2, sc);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}

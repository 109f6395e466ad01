//! On-disk memo of quotient bases.
//!
//! ```text
//! jacobiws-cache v1
//! degree 4 model full
//! ambient 2 ncols 2
//! <one canonical key per line>
//! pivots 0 3 ...
//! <row col num/den triplets>
//! ```

use crate::CliError;
use jacobiws::diagram::CanonKey;
use jacobiws::hopf::{AlgebraSpace, Model};
use jacobiws::linear::{QuotientSpace, Rational, Rref};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

const HEADER: &str = "jacobiws-cache v1";
/// Bumped whenever enumeration, canonical keys or relation generation change.
const RELATION_VERSION: u32 = 1;

pub fn cache_file(dir: &Path, n: usize, model: Model) -> PathBuf {
    let mut h = Sha256::new();
    h.update(format!("{HEADER}|degree={n}|model={}|relations={RELATION_VERSION}", model.name()));
    let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    dir.join(format!("{}.cache", &hex[..32]))
}

pub fn dump(space: &AlgebraSpace) -> String {
    let q = &space.space;
    let r = q.rref();
    let mut s = format!("{HEADER}\ndegree {} model {}\nambient {} ncols {}\n", space.degree, space.model.name(), q.ambient().len(), r.ncols);
    for k in q.ambient() {
        writeln!(s, "{k}").unwrap();
    }
    let pivots: Vec<String> = r.pivots.iter().map(usize::to_string).collect();
    writeln!(s, "pivots {}", pivots.join(" ")).unwrap();
    s.push_str(&r.dump());
    s
}

fn bad(path: &Path, msg: impl Into<String>) -> CliError {
    CliError::Cache(format!("{}: {}", path.display(), msg.into()))
}

pub fn parse(text: &str, n: usize, model: Model, path: &Path) -> Result<AlgebraSpace, CliError> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(bad(path, "missing header"));
    }
    let expected = format!("degree {n} model {}", model.name());
    if lines.next() != Some(expected.as_str()) {
        return Err(bad(path, "degree or model mismatch"));
    }
    let sizes: Vec<usize> = lines
        .next()
        .ok_or_else(|| bad(path, "truncated"))?
        .split(' ')
        .filter_map(|w| w.parse().ok())
        .collect();
    let [m, ncols] = sizes[..] else { return Err(bad(path, "bad size line")) };
    let mut ambient = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines.next().ok_or_else(|| bad(path, "truncated ambient list"))?;
        ambient.push(CanonKey::parse(line)?);
    }
    let pivots: Vec<usize> = lines
        .next()
        .and_then(|l| l.strip_prefix("pivots"))
        .ok_or_else(|| bad(path, "missing pivots"))?
        .split_whitespace()
        .map(|w| w.parse().map_err(|_| bad(path, "bad pivot")))
        .collect::<Result<_, _>>()?;
    let mut rows = vec![Vec::new(); pivots.len()];
    for line in lines {
        let parts: Vec<&str> = line.split(' ').collect();
        let [row, col, val] = parts[..] else { return Err(bad(path, format!("bad triplet `{line}`"))) };
        let row: usize = row.parse().map_err(|_| bad(path, "bad row"))?;
        let col: usize = col.parse().map_err(|_| bad(path, "bad column"))?;
        let val: Rational = val.parse().map_err(|_| bad(path, "bad value"))?;
        rows.get_mut(row).ok_or_else(|| bad(path, "row out of range"))?.push((col, val));
    }
    let rref = Rref { ncols, rows, pivots };
    Ok(AlgebraSpace::from_space(n, model, QuotientSpace::from_rref(ambient, rref)))
}

/// Load the degree-`n` space from `dir` or build and store it.
pub fn load_or_build(dir: Option<&Path>, n: usize, model: Model) -> Result<AlgebraSpace, CliError> {
    let Some(dir) = dir else {
        return Ok(AlgebraSpace::build(n, model)?);
    };
    let path = cache_file(dir, n, model);
    if let Ok(text) = fs::read_to_string(&path) {
        match parse(&text, n, model, &path) {
            Ok(space) => return Ok(space),
            Err(e) => eprintln!("warning: ignoring cache file: {e}"),
        }
    }
    let space = AlgebraSpace::build(n, model)?;
    fs::create_dir_all(dir)?;
    fs::write(&path, dump(&space))?;
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use jacobiws::hopf::model_presentation;

    #[test]
    fn roundtrip() {
        for (n, model) in [(0, Model::Full), (3, Model::Full), (4, Model::Chord)] {
            let space = AlgebraSpace::build(n, model).unwrap();
            let back = parse(&dump(&space), n, model, Path::new("mem")).unwrap();
            assert_eq!(back.basis_keys(), space.basis_keys());
            assert_eq!(back.space.rref(), space.space.rref());
            let (ambient, _) = model_presentation(n, model);
            assert_eq!(back.space.ambient(), ambient.as_slice());
        }
    }

    #[test]
    fn rejects_wrong_degree() {
        let space = AlgebraSpace::build(2, Model::Full).unwrap();
        assert!(parse(&dump(&space), 3, Model::Full, Path::new("mem")).is_err());
        assert!(parse("jacobiws-cache v0\n", 2, Model::Full, Path::new("mem")).is_err());
    }

    #[test]
    fn key_depends_on_degree_and_model() {
        let d = Path::new("/tmp");
        assert_ne!(cache_file(d, 2, Model::Full), cache_file(d, 3, Model::Full));
        assert_ne!(cache_file(d, 2, Model::Full), cache_file(d, 2, Model::Chord));
    }
}

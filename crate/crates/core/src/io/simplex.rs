//! The three-file simplex layout of the public simplicial-complex datasets:
//! `*-nverts.txt` (hyperedge sizes), `*-simplices.txt` (concatenated
//! members) and `*-times.txt` (one timestamp per hyperedge). Tokens may be
//! separated by newlines, commas or spaces.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use super::{parse_error, read_text};
use crate::error::{Error, Result};
use crate::hypergraph::{Hyperedge, Hypergraph, NodeId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexFiles {
    pub nverts: PathBuf,
    pub simplices: PathBuf,
    pub times: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexData {
    /// Node ids remapped to `0..n` in ascending order of the original ids.
    pub hypergraph: Hypergraph,
    /// `original_ids[new]` is the id used in the file.
    pub original_ids: Vec<i64>,
}

fn tokens(path: &Path) -> Result<Vec<(i64, usize)>> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for t in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v = t
                .parse::<i64>()
                .map_err(|_| parse_error(path, i + 1, format!("expected an integer, found {t:?}")))?;
            out.push((v, i + 1));
        }
    }
    Ok(out)
}

pub fn read_simplex_format(nverts: &Path, simplices: &Path, times: Option<&Path>) -> Result<SimplexData> {
    let sizes = tokens(nverts)?;
    let members = tokens(simplices)?;
    let stamps = times.map(tokens).transpose()?;

    let total: i64 = sizes.iter().map(|(s, _)| *s).sum();
    if let Some(&(s, line)) = sizes.iter().find(|(s, _)| *s <= 0) {
        return Err(parse_error(nverts, line, format!("hyperedge size must be positive, found {s}")));
    }
    if total as usize != members.len() {
        return Err(Error::validation(format!(
            "{} lists {total} members in total but {} has {}",
            nverts.display(),
            simplices.display(),
            members.len()
        )));
    }
    if let (Some(st), Some(tp)) = (&stamps, times) {
        if st.len() != sizes.len() {
            return Err(Error::validation(format!(
                "{} has {} hyperedges but {} has {} timestamps",
                nverts.display(),
                sizes.len(),
                tp.display(),
                st.len()
            )));
        }
    }
    if let Some(&(v, line)) = members.iter().find(|(v, _)| *v < 0) {
        return Err(parse_error(simplices, line, format!("negative node id {v}")));
    }

    let mut remap: BTreeMap<i64, u32> = members.iter().map(|&(v, _)| (v, 0)).collect();
    for (i, slot) in remap.values_mut().enumerate() {
        *slot = i as u32;
    }
    let original_ids: Vec<i64> = remap.keys().copied().collect();

    let mut edges = Vec::with_capacity(sizes.len());
    let mut pos = 0;
    for (j, &(s, _)) in sizes.iter().enumerate() {
        let ids = members[pos..pos + s as usize].iter().map(|(v, _)| NodeId(remap[v])).collect();
        pos += s as usize;
        let ts = stamps.as_ref().map(|st| st[j].0);
        edges.push(Hyperedge::new(ids, ts)?);
    }
    let hypergraph = Hypergraph::new(original_ids.len(), edges)?;
    Ok(SimplexData {
        hypergraph,
        original_ids,
    })
}

/// Locates the three files of one dataset inside `dir`.
pub fn find_simplex_files(dir: &Path) -> Result<SimplexFiles> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut found: [Vec<PathBuf>; 3] = Default::default();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        for (slot, suffix) in ["-nverts.txt", "-simplices.txt", "-times.txt"].iter().enumerate() {
            if name.ends_with(suffix) {
                found[slot].push(path.clone());
            }
        }
    }
    let one = |v: &mut Vec<PathBuf>, what: &str| -> Result<Option<PathBuf>> {
        v.sort();
        match v.len() {
            0 => Ok(None),
            1 => Ok(v.pop()),
            _ => Err(Error::validation(format!("{} holds several *-{what}.txt files", dir.display()))),
        }
    };
    let [mut n, mut s, mut t] = found;
    let nverts = one(&mut n, "nverts")?.ok_or_else(|| Error::validation(format!("no *-nverts.txt in {}", dir.display())))?;
    let simplices =
        one(&mut s, "simplices")?.ok_or_else(|| Error::validation(format!("no *-simplices.txt in {}", dir.display())))?;
    let times = one(&mut t, "times")?;
    Ok(SimplexFiles { nverts, simplices, times })
}

pub fn read_simplex_dir(dir: &Path) -> Result<SimplexData> {
    let f = find_simplex_files(dir)?;
    read_simplex_format(&f.nverts, &f.simplices, f.times.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn decodes_both_separators() {
        let d = tempfile::tempdir().unwrap();
        for (nv, sx, tm) in [("2,3", "5,7,5,7,9", "1,2"), ("2\n3\n", "5\n7\n5\n7\n9\n", "1\n2\n")] {
            let a = write(d.path(), "x-nverts.txt", nv);
            let b = write(d.path(), "x-simplices.txt", sx);
            let c = write(d.path(), "x-times.txt", tm);
            let data = read_simplex_format(&a, &b, Some(&c)).unwrap();
            assert_eq!(data.original_ids, vec![5, 7, 9]);
            let back: Vec<(Vec<i64>, Option<i64>)> = data
                .hypergraph
                .edges()
                .iter()
                .map(|e| (e.members().iter().map(|v| data.original_ids[v.index()]).collect(), e.timestamp()))
                .collect();
            assert_eq!(back, vec![(vec![5, 7], Some(1)), (vec![5, 7, 9], Some(2))]);
            assert_eq!(read_simplex_dir(d.path()).unwrap(), data);
        }
    }

    #[test]
    fn empty_files() {
        let d = tempfile::tempdir().unwrap();
        let a = write(d.path(), "e-nverts.txt", "");
        let b = write(d.path(), "e-simplices.txt", "");
        let c = write(d.path(), "e-times.txt", "");
        let data = read_simplex_format(&a, &b, Some(&c)).unwrap();
        assert!(data.hypergraph.is_empty());
        assert_eq!(data.hypergraph.n(), 0);
    }

    #[test]
    fn malformed_inputs() {
        let d = tempfile::tempdir().unwrap();
        let a = write(d.path(), "m-nverts.txt", "2\n2\n");
        let b = write(d.path(), "m-simplices.txt", "1\n2\n3\n");
        assert!(matches!(read_simplex_format(&a, &b, None), Err(Error::Validation(_))));
        let b = write(d.path(), "m-simplices.txt", "1\n2\nx\n4\n");
        match read_simplex_format(&a, &b, None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let b = write(d.path(), "m-simplices.txt", "1\n2\n3\n4\n");
        let c = write(d.path(), "m-times.txt", "1\n");
        assert!(read_simplex_format(&a, &b, Some(&c)).is_err());
        let a = write(d.path(), "m-nverts.txt", "0\n4\n");
        assert!(matches!(read_simplex_format(&a, &b, None), Err(Error::Parse { line: 1, .. })));
    }
}

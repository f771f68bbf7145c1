//! Text formats: graph edge lists, kernel documents and sample directories.
//!
//! Graph files are UTF-8: a header line `n <N>` followed by one `u v` edge per
//! line with `0 ≤ u < v < N`. Blank lines and lines starting with `#` are
//! skipped. Writers emit edges in lexicographic order, so identical graphs
//! produce identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sbm::SbmKernel;

/// Serializes `g` in the edge-list format.
pub fn graph_to_string(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.m());
    writeln!(out, "n {}", g.n()).expect("writing to a String");
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the edge-list format, reporting 1-based line numbers on failure.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n <N>` header"))?;
    let mut parts = header.split_whitespace();
    let n = match (parts.next(), parts.next(), parts.next()) {
        (Some("n"), Some(v), None) => v
            .parse::<usize>()
            .map_err(|_| parse_err(hline, format!("invalid vertex count `{v}`")))?,
        _ => return Err(parse_err(hline, format!("expected `n <N>`, found `{header}`"))),
    };
    if n == 0 {
        return Err(parse_err(hline, "vertex count must be positive"));
    }
    let mut g = Graph::empty(n);
    for (lineno, line) in lines {
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => {
                let u = a
                    .parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("invalid vertex `{a}`")))?;
                let v = b
                    .parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("invalid vertex `{b}`")))?;
                (u, v)
            }
            _ => return Err(parse_err(lineno, format!("expected `u v`, found `{line}`"))),
        };
        if u >= v || v >= n {
            return Err(parse_err(
                lineno,
                format!("edge ({u}, {v}) violates 0 ≤ u < v < {n}"),
            ));
        }
        if !g.set(u, v) {
            return Err(parse_err(lineno, format!("duplicate edge ({u}, {v})")));
        }
    }
    Ok(g)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    parse_graph(&text).map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse {
            line,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    })
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    fs::write(path, graph_to_string(g))?;
    Ok(())
}

/// File name of sample member `k`.
pub fn sample_file_name(k: usize) -> String {
    format!("g_{k}.txt")
}

/// Lists `g_<k>.txt` files in `dir`, ordered by `k`.
pub fn sample_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut found: Vec<(usize, PathBuf)> = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        let Some(name) = path.file_name().and_then(|s| s.to_str()) else {
            continue;
        };
        if let Some(k) = name
            .strip_prefix("g_")
            .and_then(|r| r.strip_suffix(".txt"))
            .and_then(|k| k.parse::<usize>().ok())
        {
            found.push((k, path));
        }
    }
    found.sort();
    Ok(found.into_iter().map(|(_, p)| p).collect())
}

/// Reads every `g_<k>.txt` in `dir`.
pub fn read_sample_dir(dir: &Path) -> Result<Vec<Graph>> {
    let files = sample_files(dir)?;
    if files.is_empty() {
        return Err(Error::Document(format!(
            "no g_<k>.txt graph files in {}",
            dir.display()
        )));
    }
    files.iter().map(|p| read_graph(p)).collect()
}

/// Cross densities as either one shared value or a full matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CrossSpec {
    Uniform(f64),
    Matrix(Vec<Vec<f64>>),
}

/// On-disk form of an [`SbmKernel`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelDocument {
    pub rho: f64,
    pub s: Vec<f64>,
    pub p: Vec<f64>,
    pub q: CrossSpec,
}

impl From<&SbmKernel> for KernelDocument {
    fn from(k: &SbmKernel) -> Self {
        let q = match k.uniform_cross_value() {
            Some(v) => CrossSpec::Uniform(v),
            None => CrossSpec::Matrix(k.cross().to_vec()),
        };
        Self {
            rho: k.rho(),
            s: k.sizes().to_vec(),
            p: k.within().to_vec(),
            q,
        }
    }
}

impl KernelDocument {
    pub fn to_kernel(&self) -> Result<SbmKernel> {
        match &self.q {
            CrossSpec::Uniform(q) => {
                SbmKernel::uniform_cross(self.rho, self.s.clone(), self.p.clone(), *q)
            }
            CrossSpec::Matrix(m) => SbmKernel::new(self.rho, self.s.clone(), self.p.clone(), m.clone()),
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }
}

pub fn write_kernel(path: &Path, k: &SbmKernel) -> Result<()> {
    fs::write(path, KernelDocument::from(k).to_toml()?)?;
    Ok(())
}

pub fn read_kernel(path: &Path) -> Result<SbmKernel> {
    KernelDocument::from_toml(&fs::read_to_string(path)?)?.to_kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_canonical_text() {
        let g = Graph::from_edges(4, [(2, 3), (0, 1), (1, 3)]).unwrap();
        assert_eq!(graph_to_string(&g), "n 4\n0 1\n1 3\n2 3\n");
        assert_eq!(graph_to_string(&Graph::empty(2)), "n 2\n");
    }

    #[test]
    fn parses_with_comments() {
        let g = parse_graph("# triangle\nn 3\n0 1\n\n# middle\n1 2\n0   2\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("m 3\n", 1),
            ("n x\n", 1),
            ("n 3\n0 1\n1 1\n", 3),
            ("n 3\n0 1\n2 1\n", 3),
            ("n 3\n0 3\n", 2),
            ("n 3\n0 1\n0 1\n", 3),
            ("n 3\n0 1 2\n", 2),
            ("n 3\n0 a\n", 2),
        ];
        for (text, want) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn kernel_documents() {
        let k = SbmKernel::uniform_cross(0.2, vec![0.5, 0.5], vec![0.9, 0.4], 0.3).unwrap();
        let text = KernelDocument::from(&k).to_toml().unwrap();
        assert!(text.contains("q = 0.3"));
        assert_eq!(KernelDocument::from_toml(&text).unwrap().to_kernel().unwrap(), k);

        let m = SbmKernel::new(
            1.0,
            vec![0.5, 0.3, 0.2],
            vec![0.9, 0.4, 0.5],
            vec![vec![0.0, 0.1, 0.2], vec![0.1, 0.0, 0.3], vec![0.2, 0.3, 0.0]],
        )
        .unwrap();
        let text = KernelDocument::from(&m).to_toml().unwrap();
        assert_eq!(KernelDocument::from_toml(&text).unwrap().to_kernel().unwrap(), m);
        assert!(KernelDocument::from_toml("rho = 1").is_err());
    }
}

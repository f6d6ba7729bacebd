use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::measures::row_normalize;

/// JSON manifest pointing at the three dataset files. Relative paths are
/// resolved against the manifest's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetManifest {
    pub name: String,
    pub edges: PathBuf,
    pub features: PathBuf,
    pub labels: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preprocessing: Option<Preprocessing>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Preprocessing {
    #[serde(default)]
    pub row_normalize: bool,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub manifest: DatasetManifest,
    pub graph: AttributedGraph,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// Calls `f` with each non-blank, trimmed line and its 1-based number,
/// streaming the file instead of reading it whole.
fn for_each_line(path: &Path, mut f: impl FnMut(usize, &str) -> Result<()>) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let reader = BufReader::new(File::open(path).map_err(io_err)?);
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err)?;
        let l = line.trim();
        if !l.is_empty() {
            f(i + 1, l)?;
        }
    }
    Ok(())
}

fn parse_edges(path: &Path) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for_each_line(path, |line, l| {
        if l.starts_with('#') {
            return Ok(());
        }
        let mut tokens = l.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(parse_err(path, line, "expected exactly 2 node indices"));
        };
        let parse = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| parse_err(path, line, format!("invalid node index {t:?}")))
        };
        edges.push((parse(a)?, parse(b)?));
        Ok(())
    })?;
    Ok(edges)
}

fn parse_features(path: &Path) -> Result<Array2<f64>> {
    let mut data = Vec::new();
    let mut width = None;
    let mut rows = 0;
    for_each_line(path, |line, l| {
        let before = data.len();
        for token in l.split(',') {
            let t = token.trim();
            let v: f64 = t
                .parse()
                .map_err(|_| parse_err(path, line, format!("invalid number {t:?}")))?;
            if !v.is_finite() {
                return Err(parse_err(path, line, format!("non-finite value {t:?}")));
            }
            data.push(v);
        }
        let w = data.len() - before;
        match width {
            None => width = Some(w),
            Some(expected) if expected != w => {
                return Err(parse_err(path, line, format!("expected {expected} columns, found {w}")));
            }
            _ => {}
        }
        rows += 1;
        Ok(())
    })?;
    let width = width.ok_or_else(|| parse_err(path, 1, "no feature rows"))?;
    data.shrink_to_fit();
    Ok(Array2::from_shape_vec((rows, width), data).expect("row-major buffer matches shape"))
}

fn parse_labels(path: &Path) -> Result<Vec<usize>> {
    let mut labels = Vec::new();
    for_each_line(path, |line, l| {
        labels.push(
            l.parse::<usize>()
                .map_err(|_| parse_err(path, line, format!("invalid class label {l:?}")))?,
        );
        Ok(())
    })?;
    Ok(labels)
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<DatasetManifest> {
    let path = path.as_ref();
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, e.line(), e.to_string()))
}

/// Loads the manifest and its files into a graph. The node count is
/// `num_nodes` when given, otherwise one more than the largest edge index.
pub fn load_dataset(manifest_path: impl AsRef<Path>) -> Result<Dataset> {
    let manifest_path = manifest_path.as_ref();
    let manifest = load_manifest(manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new(""));
    let resolve = |p: &Path| base.join(p);

    let edges_path = resolve(&manifest.edges);
    let features_path = resolve(&manifest.features);
    let labels_path = resolve(&manifest.labels);
    let edges = parse_edges(&edges_path)?;
    let mut features = parse_features(&features_path)?;
    let labels = parse_labels(&labels_path)?;

    let num_nodes = match manifest.num_nodes {
        Some(n) => n,
        None => {
            let max = edges.iter().map(|&(u, v)| u.max(v)).max().ok_or_else(|| {
                Error::degenerate(format!(
                    "{}: no edges, so the node count cannot be inferred; set num_nodes",
                    edges_path.display()
                ))
            })?;
            max + 1
        }
    };
    for (what, path, count) in [
        ("feature rows", &features_path, features.nrows()),
        ("labels", &labels_path, labels.len()),
    ] {
        if count != num_nodes {
            return Err(Error::degenerate(format!(
                "{}: {count} {what} but the graph has {num_nodes} nodes{}",
                path.display(),
                if manifest.num_nodes.is_none() {
                    " (inferred from the edge list; set num_nodes to override)"
                } else {
                    ""
                }
            )));
        }
    }
    if manifest.preprocessing.map_or(false, |p| p.row_normalize) {
        features = row_normalize(features.view()).0;
    }
    let graph = AttributedGraph::new(num_nodes, &edges, features, labels, None)?;
    Ok(Dataset {
        name: manifest.name.clone(),
        manifest,
        graph,
    })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let mut w = create(path)?;
    body(&mut w).and_then(|_| w.flush()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `edges.tsv`, `features.csv`, `labels.txt` and `manifest.json`
/// into `dir` and returns the manifest path. Floats use the shortest
/// representation that parses back to the same value.
pub fn write_dataset(dir: impl AsRef<Path>, name: &str, g: &AttributedGraph) -> Result<PathBuf> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    write_file(&dir.join("edges.tsv"), |w| {
        g.edges().iter().try_for_each(|(u, v)| writeln!(w, "{u}\t{v}"))
    })?;
    write_file(&dir.join("features.csv"), |w| {
        for row in g.features().rows() {
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    w.write_all(b",")?;
                }
                write!(w, "{v:?}")?;
            }
            w.write_all(b"\n")?;
        }
        Ok(())
    })?;
    write_file(&dir.join("labels.txt"), |w| {
        g.labels().iter().try_for_each(|l| writeln!(w, "{l}"))
    })?;

    let manifest = DatasetManifest {
        name: name.to_string(),
        edges: "edges.tsv".into(),
        features: "features.csv".into(),
        labels: "labels.txt".into(),
        num_nodes: Some(g.num_nodes()),
        preprocessing: None,
    };
    let path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    write_file(&path, |w| w.write_all(text.as_bytes()))?;
    Ok(path)
}

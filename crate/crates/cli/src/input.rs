use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use ldpart::format::{parse_graphs, Format};
use ldpart::Graph;

/// A parsed graph and where it came from.
pub struct Instance {
    pub source: String,
    pub index: usize,
    pub graph: Graph,
}

fn read_source(path: Option<&Path>) -> Result<(String, String)> {
    match path {
        None => read_stdin(),
        Some(p) if p.as_os_str() == "-" => read_stdin(),
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok((p.display().to_string(), text))
        }
    }
}

fn read_stdin() -> Result<(String, String)> {
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
    Ok(("-".to_string(), text))
}

fn parse(source: String, text: &str, format: Option<Format>) -> Result<Vec<Instance>> {
    let graphs = parse_graphs(text, format).with_context(|| format!("parsing {source}"))?;
    Ok(graphs
        .into_iter()
        .enumerate()
        .map(|(index, graph)| Instance { source: source.clone(), index, graph })
        .collect())
}

/// All graphs in one file (or stdin).
pub fn read_instances(path: Option<&Path>, format: Option<Format>) -> Result<Vec<Instance>> {
    let (source, text) = read_source(path)?;
    parse(source, &text, format)
}

/// Exactly one graph.
pub fn read_single(path: Option<&Path>, format: Option<Format>) -> Result<Instance> {
    let mut all = read_instances(path, format)?;
    if all.len() != 1 {
        bail!("expected one graph, found {}", all.len());
    }
    Ok(all.pop().expect("one instance"))
}

/// Graphs from files and directories (their regular files, sorted by name);
/// stdin when `paths` is empty.
pub fn read_corpus(paths: &[PathBuf], format: Option<Format>) -> Result<Vec<Instance>> {
    if paths.is_empty() {
        return read_instances(None, format);
    }
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(p)
                .with_context(|| format!("listing {}", p.display()))?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()?;
            entries.retain(|e| e.is_file());
            entries.sort();
            files.extend(entries);
        } else {
            files.push(p.clone());
        }
    }
    let mut out = Vec::new();
    for f in files {
        out.extend(read_instances(Some(&f), format)?);
    }
    Ok(out)
}

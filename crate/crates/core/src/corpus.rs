//! Loading `.py` files from a file or directory tree in a stable order.

use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
#[error("{path}: {source}")]
pub struct CorpusError {
    pub path: PathBuf,
    pub source: std::io::Error,
}

fn visit(dir: &Path, out: &mut Vec<PathBuf>) -> Result<(), CorpusError> {
    let err = |source| CorpusError {
        path: dir.to_path_buf(),
        source,
    };
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(err)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    entries.sort();
    for p in entries {
        if p.is_dir() {
            visit(&p, out)?;
        } else if p.extension().is_some_and(|e| e == "py") {
            out.push(p);
        }
    }
    Ok(())
}

/// `path` itself if it is a file, else every `.py` file below it, sorted
/// by path.
pub fn python_files(path: &Path) -> Result<Vec<PathBuf>, CorpusError> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut out = Vec::new();
    visit(path, &mut out)?;
    Ok(out)
}

/// (id, text) pairs; ids are paths relative to `path` when it is a directory.
pub fn load_sources(path: &Path) -> Result<Vec<(String, String)>, CorpusError> {
    python_files(path)?
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(|source| CorpusError {
                path: p.clone(),
                source,
            })?;
            let id = p
                .strip_prefix(path)
                .ok()
                .filter(|r| !r.as_os_str().is_empty())
                .unwrap_or(&p);
            Ok((id.display().to_string(), text))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn files_are_sorted_and_recursive() {
        let dir = std::env::temp_dir().join(format!("simpy-corpus-{}", std::process::id()));
        std::fs::create_dir_all(dir.join("sub")).unwrap();
        for f in ["b.py", "a.py", "sub/c.py", "notes.txt"] {
            std::fs::write(dir.join(f), "pass\n").unwrap();
        }
        let ids: Vec<String> = load_sources(&dir)
            .unwrap()
            .into_iter()
            .map(|(id, _)| id)
            .collect();
        assert_eq!(ids, ["a.py", "b.py", "sub/c.py"]);
        assert_eq!(python_files(&dir.join("a.py")).unwrap().len(), 1);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}

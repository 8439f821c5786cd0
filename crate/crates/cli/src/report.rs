//! Report files: CSV, JSON, and plain-text summaries, each stamped with the
//! config hash and the bounds in force so runs are fully attributable.

use cihom_core::error::{Error, Result};
use serde_json::{Map, Value};
use std::path::{Path, PathBuf};

pub struct Reporter {
    out: PathBuf,
    stamp: String,
    meta: Map<String, Value>,
}

impl Reporter {
    pub fn new(
        out: &Path,
        config_hash: &str,
        i_max: usize,
        n_max: usize,
        deg_cap: usize,
        seed: u64,
    ) -> Result<Reporter> {
        std::fs::create_dir_all(out)
            .map_err(|e| Error::Parse(format!("cannot create {}: {e}", out.display())))?;
        let stamp = format!(
            "config {config_hash} imax {i_max} nmax {n_max} degcap {deg_cap} seed {seed}"
        );
        let mut meta = Map::new();
        meta.insert("config_hash".into(), Value::String(config_hash.into()));
        meta.insert("i_max".into(), Value::from(i_max));
        meta.insert("n_max".into(), Value::from(n_max));
        meta.insert("deg_cap".into(), Value::from(deg_cap));
        meta.insert("seed".into(), Value::from(seed));
        Ok(Reporter {
            out: out.to_path_buf(),
            stamp,
            meta,
        })
    }

    fn write(&self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.out.join(name);
        std::fs::write(&path, bytes)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
    }

    /// CSV with a leading comment line carrying the stamp.
    pub fn csv(&self, name: &str, header: &str, rows: &[Vec<String>]) -> Result<()> {
        let mut s = format!("# {}\n{header}\n", self.stamp);
        for row in rows {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        self.write(name, s.as_bytes())
    }

    /// JSON object with the stamp fields merged in under "meta".
    pub fn json(&self, name: &str, mut body: Map<String, Value>) -> Result<()> {
        body.insert("meta".into(), Value::Object(self.meta.clone()));
        let s = serde_json::to_string_pretty(&Value::Object(body)).expect("serializable");
        self.write(name, format!("{s}\n").as_bytes())
    }

    /// Plain-text summary, stamped.
    pub fn text(&self, name: &str, lines: &[String]) -> Result<()> {
        let mut s = format!("{}\n", self.stamp);
        for l in lines {
            s.push_str(l);
            s.push('\n');
        }
        self.write(name, s.as_bytes())
    }
}

pub fn strings_value(xs: &[String]) -> Value {
    Value::Array(xs.iter().map(|s| Value::String(s.clone())).collect())
}

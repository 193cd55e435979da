//! On-disk JSON cache of Macdonald bases.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use symop::symfunc::MacdonaldCache;
use symop::vertexops::KernelReading;
use symop::{Orientation, Partition, SymFunc};

const FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    partition: Partition,
    polynomial: Value,
}

/// `bases[orientation][degree]` lists `(lambda, P_lambda)` in partition order.
#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: u32,
    kernel_reading: String,
    bases: BTreeMap<String, BTreeMap<usize, Vec<Entry>>>,
}

/// A [`MacdonaldCache`] optionally backed by a file.
pub struct DiskCache {
    path: Option<PathBuf>,
    reading: KernelReading,
    loaded: usize,
    pub memo: MacdonaldCache,
}

impl DiskCache {
    pub fn open(path: Option<&Path>, reading: KernelReading) -> anyhow::Result<Self> {
        let memo = MacdonaldCache::new();
        let mut loaded = 0;
        if let Some(p) = path.filter(|p| p.exists()) {
            let text = fs::read_to_string(p).with_context(|| format!("reading cache {}", p.display()))?;
            let file: CacheFile =
                serde_json::from_str(&text).with_context(|| format!("parsing cache {}", p.display()))?;
            if file.format != FORMAT {
                bail!("cache {} has format {}, expected {FORMAT}", p.display(), file.format);
            }
            if file.kernel_reading == reading.to_string() {
                for (o, by_degree) in file.bases {
                    let o: Orientation = o.parse()?;
                    for (d, entries) in by_degree {
                        let basis = entries
                            .into_iter()
                            .map(|e| Ok((e.partition, SymFunc::from_json_value(&e.polynomial)?)))
                            .collect::<symop::Result<Vec<_>>>()?;
                        memo.insert(d, o, basis);
                        loaded += 1;
                    }
                }
            } else {
                eprintln!("cache {} was built with kernel reading {}; ignoring it", p.display(), file.kernel_reading);
            }
        }
        Ok(DiskCache { path: path.map(Path::to_path_buf), reading, loaded, memo })
    }

    /// Writes the cache back if anything new was computed.
    pub fn save(&self) -> anyhow::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let entries = self.memo.entries();
        if entries.len() == self.loaded {
            return Ok(());
        }
        let mut bases: BTreeMap<String, BTreeMap<usize, Vec<Entry>>> = BTreeMap::new();
        for ((d, o), basis) in entries {
            let list = basis
                .iter()
                .map(|(la, f)| Entry { partition: la.clone(), polynomial: f.to_json_value() })
                .collect();
            bases.entry(o.to_string()).or_default().insert(d, list);
        }
        let file = CacheFile { format: FORMAT, kernel_reading: self.reading.to_string(), bases };
        let tmp = path.with_extension("tmp");
        let mut out = fs::File::create(&tmp).with_context(|| format!("writing {}", tmp.display()))?;
        serde_json::to_writer_pretty(&mut out, &file)?;
        out.write_all(b"\n")?;
        fs::rename(&tmp, path).with_context(|| format!("replacing {}", path.display()))?;
        Ok(())
    }
}

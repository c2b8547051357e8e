//! On-disk cache of `cg_table` output.
//!
//! One file per `(p, q, d)` named `L{p}_{q}_d{d}.tsv`, holding one line
//! `a<TAB>num/den` per row, sorted by `a`. Files always describe the
//! positively oriented lens space. Writes go through a temporary file and a
//! rename, so concurrent readers never observe a partial table.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use super::{cg_table, CGValue, CgError, LensSpace, LensTable, Orientation};
use crate::rational;

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

/// Renders table rows exactly as `cg-table` prints them.
pub fn render_table(rows: &[(u64, CGValue)]) -> String {
    rows.iter().map(|(a, v)| format!("{a}\t{v}\n")).collect()
}

fn parse_table(text: &str) -> Option<Vec<(u64, CGValue)>> {
    text.lines()
        .map(|line| {
            let (a, v) = line.split_once('\t')?;
            Some((a.parse().ok()?, CGValue::new(rational::parse(v)?)))
        })
        .collect()
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, p: u64, q: u64, d: u64) -> PathBuf {
        self.dir.join(format!("L{p}_{q}_d{d}.tsv"))
    }

    /// The cached table, or a freshly computed one that is then stored.
    /// An unreadable or malformed cache file is treated as absent.
    pub fn table(&self, l: &LensSpace, d: u64) -> Result<Vec<(u64, CGValue)>, CgError> {
        let positive = LensSpace::new(l.p(), l.q())?;
        let path = self.path_for(l.p(), l.q(), d);
        let expected_rows = if d == 0 || !l.p().is_multiple_of(d) {
            0
        } else {
            d as usize
        };
        let rows = match fs::read_to_string(&path).ok().and_then(|t| parse_table(&t)) {
            Some(rows) if rows.len() == expected_rows && expected_rows > 0 => rows,
            _ => {
                let rows = cg_table(&positive, d)?;
                self.store(&path, &rows)?;
                rows
            }
        };
        Ok(match l.orientation() {
            Orientation::Positive => rows,
            Orientation::Negative => rows
                .into_iter()
                .map(|(a, v)| (a, CGValue::new(v.into_inner() * BigInt::from(-1))))
                .collect(),
        })
    }

    /// The full table of `l`, through the cache.
    pub fn lens_table(&self, l: &LensSpace) -> Result<LensTable, CgError> {
        let values = self
            .table(l, l.p())?
            .into_iter()
            .map(|(_, v)| v.into_inner())
            .collect();
        Ok(LensTable { lens: *l, values })
    }

    fn store(&self, path: &Path, rows: &[(u64, CGValue)]) -> Result<(), CgError> {
        let io = |e: std::io::Error| CgError::Cache(format!("{}: {e}", path.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(render_table(rows).as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }
}

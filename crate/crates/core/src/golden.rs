//! Checked-in reference outputs under `golden/<type>/<what>.txt`.

use std::path::{Path, PathBuf};

use crate::certificates::{verify_suite, Suite};
use crate::emit::emit;
use crate::error::Result;
use crate::maps::{Sign, SingularityType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenEntry {
    pub ty: SingularityType,
    /// An emit target name, or `residues` for the mod-p certificate values.
    pub what: String,
    /// Needs the full E8 discriminant (tens of seconds).
    pub heavy: bool,
}

impl GoldenEntry {
    pub fn path(&self, dir: &Path) -> PathBuf {
        dir.join(self.ty.to_string()).join(format!("{}.txt", self.what))
    }

    /// Re-derives the file contents.
    pub fn render(&self) -> Result<String> {
        if self.what == "residues" {
            let mut out = String::new();
            for c in verify_suite(self.ty, Suite::Modp)? {
                out.push_str(&format!("{} = {}\n", c.name, c.value));
            }
            return Ok(out);
        }
        Ok(emit(self.ty, self.what.parse()?, None)?.to_text())
    }
}

fn entry(ty: SingularityType, what: &str) -> GoldenEntry {
    GoldenEntry { ty, what: what.into(), heavy: false }
}

pub fn entries() -> Vec<GoldenEntry> {
    use SingularityType as T;
    let mut v = vec![
        entry(T::A(2), "theta"),
        entry(T::A(2), "map"),
        entry(T::A(2), "A"),
        entry(T::A(2), "B"),
        entry(T::A(3), "theta"),
        entry(T::CrossCap(2), "R"),
        entry(T::CrossCap(2), "S"),
        entry(T::Morin { m: 4, n: 5, r: 2 }, "theta"),
        entry(T::Morin { m: 4, n: 5, r: 2 }, "S"),
        entry(T::Morin { m: 4, n: 5, r: 1 }, "map"),
        entry(T::Morin { m: 6, n: 7, r: 3 }, "map"),
        entry(T::D(4, Sign::Plus), "family"),
        entry(T::E8, "family"),
    ];
    for k in 4..=8 {
        for s in [Sign::Plus, Sign::Minus] {
            v.push(entry(T::D(k, s), "A"));
        }
    }
    for w in ["A", "B", "r", "delta", "B0", "k0", "k1", "H", "theta", "residues"] {
        v.push(entry(T::E6, w));
    }
    for w in ["A", "B", "r", "delta", "residues"] {
        v.push(entry(T::E7, w));
    }
    for w in ["A", "B", "r", "delta", "B0"] {
        v.push(entry(T::E8, w));
    }
    v.push(GoldenEntry { ty: T::E8, what: "residues".into(), heavy: true });
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoldenStatus {
    Match,
    Differs { first_line: usize },
    Missing,
}

#[derive(Clone, Debug)]
pub struct GoldenReport {
    pub entry: GoldenEntry,
    pub path: PathBuf,
    pub status: GoldenStatus,
}

fn first_difference(a: &str, b: &str) -> usize {
    let mut la = a.lines();
    let mut lb = b.lines();
    let mut n = 1;
    loop {
        match (la.next(), lb.next()) {
            (None, None) => return n,
            (x, y) if x != y => return n,
            _ => n += 1,
        }
    }
}

/// Diffs every selected entry against `dir`.
pub fn check(dir: &Path, include_heavy: bool) -> Result<Vec<GoldenReport>> {
    let mut out = Vec::new();
    for e in entries().into_iter().filter(|e| include_heavy || !e.heavy) {
        let path = e.path(dir);
        let status = match std::fs::read_to_string(&path) {
            Err(_) => GoldenStatus::Missing,
            Ok(stored) => {
                let fresh = e.render()?;
                if fresh == stored {
                    GoldenStatus::Match
                } else {
                    GoldenStatus::Differs { first_line: first_difference(&fresh, &stored) }
                }
            }
        };
        out.push(GoldenReport { entry: e, path, status });
    }
    Ok(out)
}

/// Regenerates every selected entry in `dir`.
pub fn write(dir: &Path, include_heavy: bool) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for e in entries().into_iter().filter(|e| include_heavy || !e.heavy) {
        let path = e.path(dir);
        std::fs::create_dir_all(path.parent().expect("has parent"))?;
        std::fs::write(&path, e.render()?)?;
        out.push(path);
    }
    Ok(out)
}

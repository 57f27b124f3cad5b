//! On-disk persistence for reduced Groebner bases, keyed by a digest of the
//! field, variable list, monomial order, and the canonicalized generator
//! set. The cache is opt-in: nothing is read or written unless a directory
//! has been configured through `set_cache_dir` or the `SOCLE_CACHE_DIR`
//! environment variable.
//!
//! Entries are JSON files named by the digest. Writes go through a
//! temporary file followed by a rename so that concurrent runs sharing a
//! cache directory never observe a partial entry. Unreadable or corrupt
//! entries are treated as misses and recomputed.

use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::monomial::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::{PolyRing, Polynomial};

fn cache_dir_slot() -> &'static Mutex<Option<PathBuf>> {
    static SLOT: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();
    SLOT.get_or_init(|| {
        Mutex::new(std::env::var_os("SOCLE_CACHE_DIR").map(PathBuf::from))
    })
}

/// Points the basis cache at `dir`, or disables it with `None`. Overrides
/// the environment variable for the rest of the process.
pub fn set_cache_dir(dir: Option<&Path>) {
    *cache_dir_slot().lock().unwrap() = dir.map(Path::to_path_buf);
}

fn active_dir() -> Option<PathBuf> {
    cache_dir_slot().lock().unwrap().clone()
}

#[derive(Serialize, Deserialize)]
struct Entry {
    schema_version: u32,
    key: String,
    basis: Vec<String>,
}

const ENTRY_SCHEMA: u32 = 1;

/// Digest identifying one basis computation.
pub fn basis_key(ring: &Arc<PolyRing>, order: MonomialOrder, gens: &[Polynomial]) -> String {
    let mut rendered: Vec<String> = gens.iter().map(|g| g.render()).collect();
    rendered.sort();
    let mut hasher = Sha256::new();
    hasher.update(ring.field().render().as_bytes());
    hasher.update(b"\n");
    hasher.update(ring.vars().join(",").as_bytes());
    hasher.update(b"\n");
    hasher.update(order.render().as_bytes());
    hasher.update(b"\n");
    for r in &rendered {
        hasher.update(r.as_bytes());
        hasher.update(b"\n");
    }
    format!("{:x}", hasher.finalize())
}

/// Attempts to load a previously stored basis for `key`, parsed back into
/// `ring`. Any failure is a miss.
pub fn lookup(ring: &Arc<PolyRing>, order: MonomialOrder, key: &str) -> Option<Vec<Polynomial>> {
    let dir = active_dir()?;
    if ring.order() != order {
        return None;
    }
    let raw = std::fs::read_to_string(dir.join(format!("{key}.json"))).ok()?;
    let entry: Entry = serde_json::from_str(&raw).ok()?;
    if entry.schema_version != ENTRY_SCHEMA || entry.key != key {
        return None;
    }
    let mut polys = Vec::with_capacity(entry.basis.len());
    for s in &entry.basis {
        polys.push(parse_polynomial(ring, s).ok()?);
    }
    Some(polys)
}

/// Persists a computed basis under `key`. Failures are silent: the cache
/// is an accelerator, never a source of truth.
pub fn store(key: &str, basis: &[Polynomial]) {
    let Some(dir) = active_dir() else {
        return;
    };
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    let entry = Entry {
        schema_version: ENTRY_SCHEMA,
        key: key.to_string(),
        basis: basis.iter().map(|p| p.render()).collect(),
    };
    let Ok(body) = serde_json::to_string_pretty(&entry) else {
        return;
    };
    let tmp = dir.join(format!("{key}.tmp.{}", std::process::id()));
    if std::fs::write(&tmp, body).is_ok() {
        let _ = std::fs::rename(&tmp, dir.join(format!("{key}.json")));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(
            vec!["x".into(), "y".into()],
            FieldSpec::Rationals,
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    #[test]
    fn key_ignores_generator_listing_order() {
        let r = ring();
        let f = parse_polynomial(&r, "x^2").unwrap();
        let g = parse_polynomial(&r, "y^3 - x").unwrap();
        let a = basis_key(&r, MonomialOrder::DegRevLex, &[f.clone(), g.clone()]);
        let b = basis_key(&r, MonomialOrder::DegRevLex, &[g, f]);
        assert_eq!(a, b);
    }

    #[test]
    fn key_distinguishes_orders_and_fields() {
        let r = ring();
        let f = parse_polynomial(&r, "x^2 - y").unwrap();
        let a = basis_key(&r, MonomialOrder::DegRevLex, &[f.clone()]);
        let b = basis_key(&r, MonomialOrder::Lex, &[f.clone()]);
        assert_ne!(a, b);
        let rp = PolyRing::new(
            vec!["x".into(), "y".into()],
            FieldSpec::PrimeField { characteristic: 32003 },
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let fp = parse_polynomial(&rp, "x^2 - y").unwrap();
        let c = basis_key(&rp, MonomialOrder::DegRevLex, &[fp]);
        assert_ne!(a, c);
    }

    #[test]
    fn corrupt_entries_are_misses() {
        let tmp = tempfile::tempdir().unwrap();
        let r = ring();
        let f = parse_polynomial(&r, "x^2 - y").unwrap();
        let key = basis_key(&r, MonomialOrder::DegRevLex, &[f.clone()]);
        std::fs::write(tmp.path().join(format!("{key}.json")), "{ not json").unwrap();
        set_cache_dir(Some(tmp.path()));
        assert!(lookup(&r, MonomialOrder::DegRevLex, &key).is_none());
        store(&key, &[f.clone()]);
        let back = lookup(&r, MonomialOrder::DegRevLex, &key).unwrap();
        assert_eq!(back, vec![f]);
        set_cache_dir(None);
    }
}

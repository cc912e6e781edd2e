//! On-disk caches for built groups: the element table plus the class
//! table, so a rebuild skips both the closure and the class partition.
//!
//! Two interchangeable formats: a compact little-endian binary (magic
//! "WMGC") and a JSON document. The element table is checksummed with
//! FNV-1a 64 and the hash is verified on load.

use super::{ClassTable, FiniteGroup, GroupError, GroupSpec};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

const MAGIC: &[u8; 4] = b"WMGC";
const VERSION: u32 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CacheFormat {
    Binary,
    Json,
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn element_bytes(elems: &[u16]) -> Vec<u8> {
    let mut out = Vec::with_capacity(elems.len() * 2);
    for &e in elems {
        out.extend_from_slice(&e.to_le_bytes());
    }
    out
}

/// Conventional cache file name for a descriptor: a readable stem plus a
/// short content hash of the descriptor itself.
pub fn cache_file_name(spec: &GroupSpec, format: CacheFormat) -> String {
    let stem = match spec {
        GroupSpec::Gl { n, p } => format!("gl{n}-{p}"),
        GroupSpec::Sl { n, p } => format!("sl{n}-{p}"),
        GroupSpec::Psl { n, p } => format!("psl{n}-{p}"),
        GroupSpec::Perm { degree, .. } => {
            let json = serde_json::to_string(spec).expect("descriptor serializes");
            format!("perm{degree}-{:08x}", fnv1a64(json.as_bytes()) as u32)
        }
    };
    let ext = match format {
        CacheFormat::Binary => "wmgc",
        CacheFormat::Json => "json",
    };
    format!("{stem}.{ext}")
}

pub fn cache_path(dir: &Path, spec: &GroupSpec, format: CacheFormat) -> PathBuf {
    dir.join(cache_file_name(spec, format))
}

#[derive(Serialize, Deserialize)]
struct JsonDoc {
    format: String,
    version: u32,
    spec: GroupSpec,
    elem_len: usize,
    order: usize,
    elements: Vec<u16>,
    element_hash: String,
    class_of: Vec<u32>,
    class_orders: Vec<u32>,
    class_inverse: Vec<u32>,
}

pub fn save(group: &FiniteGroup, path: &Path, format: CacheFormat) -> Result<(), GroupError> {
    let bytes = match format {
        CacheFormat::Binary => to_binary(group),
        CacheFormat::Json => to_json(group)?,
    };
    std::fs::write(path, bytes)?;
    Ok(())
}

/// Loads either format, sniffing by content.
pub fn load(path: &Path) -> Result<FiniteGroup, GroupError> {
    let bytes = std::fs::read(path)?;
    if bytes.starts_with(MAGIC) {
        return from_binary(&bytes);
    }
    if bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{') {
        return from_json(&bytes);
    }
    Err(GroupError::CacheFormat { msg: "neither WMGC binary nor JSON".into() })
}

fn to_json(group: &FiniteGroup) -> Result<Vec<u8>, GroupError> {
    let (class_of, orders, inverse) = group.classes.parts();
    let doc = JsonDoc {
        format: "wordmap-group-cache".into(),
        version: VERSION,
        spec: group.spec.clone(),
        elem_len: group.elem_len,
        order: group.order,
        elements: group.elems.clone(),
        element_hash: format!("{:#018x}", fnv1a64(&element_bytes(&group.elems))),
        class_of: class_of.to_vec(),
        class_orders: orders.to_vec(),
        class_inverse: inverse.to_vec(),
    };
    serde_json::to_vec(&doc).map_err(|e| GroupError::CacheFormat { msg: format!("serialize: {e}") })
}

fn from_json(bytes: &[u8]) -> Result<FiniteGroup, GroupError> {
    let doc: JsonDoc = serde_json::from_slice(bytes)
        .map_err(|e| GroupError::CacheFormat { msg: format!("parse: {e}") })?;
    if doc.version != VERSION {
        return Err(GroupError::CacheFormat {
            msg: format!("unsupported version {}", doc.version),
        });
    }
    let stored = u64::from_str_radix(doc.element_hash.trim_start_matches("0x"), 16)
        .map_err(|_| GroupError::CacheFormat { msg: "bad element_hash".into() })?;
    let computed = fnv1a64(&element_bytes(&doc.elements));
    if stored != computed {
        return Err(GroupError::CacheHash { stored, computed });
    }
    if doc.elements.len() != doc.order * doc.elem_len {
        return Err(GroupError::CacheFormat { msg: "element count mismatch".into() });
    }
    let classes = ClassTable::from_parts(doc.class_of, doc.class_orders, doc.class_inverse)?;
    FiniteGroup::from_parts(doc.spec, doc.elements, classes)
}

fn to_binary(group: &FiniteGroup) -> Vec<u8> {
    let spec_json = serde_json::to_vec(&group.spec).expect("descriptor serializes");
    let (class_of, orders, inverse) = group.classes.parts();
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(spec_json.len() as u32).to_le_bytes());
    out.extend_from_slice(&spec_json);
    out.extend_from_slice(&(group.elem_len as u32).to_le_bytes());
    out.extend_from_slice(&(group.order as u32).to_le_bytes());
    let table = element_bytes(&group.elems);
    out.extend_from_slice(&table);
    out.extend_from_slice(&fnv1a64(&table).to_le_bytes());
    out.extend_from_slice(&(orders.len() as u32).to_le_bytes());
    for &c in class_of {
        out.extend_from_slice(&c.to_le_bytes());
    }
    for &o in orders {
        out.extend_from_slice(&o.to_le_bytes());
    }
    for &i in inverse {
        out.extend_from_slice(&i.to_le_bytes());
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], GroupError> {
        if self.pos + n > self.bytes.len() {
            return Err(GroupError::CacheFormat { msg: "truncated file".into() });
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, GroupError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, GroupError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn u32_vec(&mut self, n: usize) -> Result<Vec<u32>, GroupError> {
        let raw = self.take(n * 4)?;
        Ok(raw.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect())
    }
}

fn from_binary(bytes: &[u8]) -> Result<FiniteGroup, GroupError> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(4)? != MAGIC {
        return Err(GroupError::CacheFormat { msg: "bad magic".into() });
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(GroupError::CacheFormat { msg: format!("unsupported version {version}") });
    }
    let spec_len = r.u32()? as usize;
    let spec: GroupSpec = serde_json::from_slice(r.take(spec_len)?)
        .map_err(|e| GroupError::CacheFormat { msg: format!("bad descriptor: {e}") })?;
    let elem_len = r.u32()? as usize;
    let order = r.u32()? as usize;
    let table_len = order
        .checked_mul(elem_len)
        .and_then(|n| n.checked_mul(2))
        .ok_or(GroupError::CacheFormat { msg: "size overflow".into() })?;
    let table = r.take(table_len)?;
    let stored = r.u64()?;
    let computed = fnv1a64(table);
    if stored != computed {
        return Err(GroupError::CacheHash { stored, computed });
    }
    let elems: Vec<u16> =
        table.chunks_exact(2).map(|c| u16::from_le_bytes(c.try_into().unwrap())).collect();
    let class_count = r.u32()? as usize;
    let class_of = r.u32_vec(order)?;
    let orders = r.u32_vec(class_count)?;
    let inverse = r.u32_vec(class_count)?;
    if r.pos != bytes.len() {
        return Err(GroupError::CacheFormat { msg: "trailing bytes".into() });
    }
    let classes = ClassTable::from_parts(class_of, orders, inverse)?;
    FiniteGroup::from_parts(spec, elems, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroups::build_group;

    fn groups_agree(a: &FiniteGroup, b: &FiniteGroup) {
        assert_eq!(a.order(), b.order());
        assert_eq!(a.spec(), b.spec());
        assert_eq!(a.classes().count(), b.classes().count());
        for c in 0..a.classes().count() as u32 {
            assert_eq!(a.classes().size(c), b.classes().size(c));
            assert_eq!(a.classes().element_order(c), b.classes().element_order(c));
            assert_eq!(a.classes().inverse_class(c), b.classes().inverse_class(c));
            assert_eq!(a.classes().rep(c), b.classes().rep(c));
        }
        let last = a.order() as u32 - 1;
        for (x, y) in [(1u32, 2u32), (10, 20), (0, 5), (last, 3)] {
            assert_eq!(a.mul(x, y), b.mul(x, y));
            assert_eq!(a.inverse_of(x), b.inverse_of(x));
        }
    }

    #[test]
    fn binary_round_trip() {
        let g = build_group(&GroupSpec::Psl { n: 2, p: 5 }).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), g.spec(), CacheFormat::Binary);
        assert!(path.to_string_lossy().ends_with("psl2-5.wmgc"));
        save(&g, &path, CacheFormat::Binary).unwrap();
        let back = load(&path).unwrap();
        groups_agree(&g, &back);
    }

    #[test]
    fn json_round_trip() {
        let g = build_group(&GroupSpec::Sl { n: 2, p: 3 }).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), g.spec(), CacheFormat::Json);
        save(&g, &path, CacheFormat::Json).unwrap();
        let back = load(&path).unwrap();
        groups_agree(&g, &back);
    }

    #[test]
    fn corruption_is_detected() {
        let g = build_group(&GroupSpec::Sl { n: 2, p: 3 }).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.wmgc");
        save(&g, &path, CacheFormat::Binary).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        // flip one element-table byte; the table starts after
        // magic(4) version(4) spec_len(4) spec elem_len(4) order(4)
        let spec_len = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
        let offset = 12 + spec_len + 8 + 10;
        bytes[offset] ^= 1;
        std::fs::write(&path, &bytes).unwrap();
        match load(&path) {
            Err(GroupError::CacheHash { .. }) | Err(GroupError::CacheFormat { .. }) => {}
            other => panic!("corruption not caught: {:?}", other.map(|g| g.order())),
        }
    }

    #[test]
    fn truncation_is_detected() {
        let g = build_group(&GroupSpec::Sl { n: 2, p: 3 }).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.wmgc");
        save(&g, &path, CacheFormat::Binary).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
        assert!(matches!(load(&path), Err(GroupError::CacheFormat { .. })));
    }

    #[test]
    fn garbage_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.wmgc");
        std::fs::write(&path, b"not a cache").unwrap();
        assert!(matches!(load(&path), Err(GroupError::CacheFormat { .. })));
    }
}

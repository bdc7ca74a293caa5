//! Deterministic on-disk caching of expensive artifacts in a versioned,
//! line-oriented text format.
//!
//! Every artifact serializes to a canonical byte string: a header line
//! `weylcoh-cache <version> <kind>`, one record per line (integers separated
//! by single spaces), and a trailing `sum <hex>` line carrying a SHA-256
//! digest of the body. Parsing rejects any deviation — wrong version, wrong
//! field counts, non-canonical integers, inconsistent dimensions or a bad
//! checksum. Cache files are written atomically (temp file + rename) and
//! keyed by a content hash of the artifact's descriptive parameters plus a
//! code-version tag, so stale entries are never read after a format change.

use std::cell::Cell;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::arrangements::{ArrKind, ArrangementPoset, BitMatrix, Layer};
use crate::chartab::CharTable;
use crate::frac::Frac;
use crate::intlin::IMat;
use crate::poly::IPoly;

/// Bumped whenever the serialized representation of any artifact changes.
pub const FORMAT_VERSION: u32 = 1;

/// Hard bound on any count read from an untrusted header, to keep
/// allocations sane while parsing.
const MAX_COUNT: usize = 1 << 22;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {0}: {1}")]
    Format(usize, String),
    #[error("unsupported cache format version {0}")]
    Version(u32),
    #[error("checksum mismatch")]
    Checksum,
}

/// A group stored as its root list and element permutations; enough to
/// rebuild the group with `Group::from_elements` against a matching root
/// system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRecord {
    pub label: String,
    pub roots_amb: Vec<Vec<i64>>,
    pub elements: Vec<Vec<u8>>,
}

/// An equivariant Poincaré polynomial: one integer polynomial per conjugacy
/// class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyTable {
    pub labels: Vec<String>,
    pub polys: Vec<IPoly>,
}

/// Everything the cache knows how to store.
pub enum Artifact {
    Poset(ArrangementPoset),
    CharTable(CharTable),
    Group(GroupRecord),
    Polys(PolyTable),
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Poset(_) => "poset",
            Artifact::CharTable(_) => "chartab",
            Artifact::Group(_) => "group",
            Artifact::Polys(_) => "polys",
        }
    }
}

fn push_ints(line: &mut String, xs: impl IntoIterator<Item = i64>) {
    for x in xs {
        let _ = write!(line, " {x}");
    }
}

/// Canonical text serialization. Deterministic: field order is fixed and
/// every integer is written in canonical decimal.
pub fn serialize(artifact: &Artifact) -> String {
    let mut body = String::new();
    match artifact {
        Artifact::Poset(p) => {
            let kind = match p.kind {
                ArrKind::Linear => "linear",
                ArrKind::Toric => "toric",
            };
            let _ = writeln!(body, "meta {} {} {} {}", kind, p.rank, p.roots.len(), p.layers.len());
            for r in &p.roots {
                let mut line = String::from("root");
                push_ints(&mut line, r.iter().copied());
                let _ = writeln!(body, "{line}");
            }
            for l in &p.layers {
                let mut line = format!("layer {}", l.basis.rows);
                push_ints(&mut line, l.basis.a.iter().copied());
                for v in &l.values {
                    let _ = write!(line, " {}/{}", v.num(), v.den());
                }
                let _ = writeln!(body, "{line}");
            }
            for j in 0..p.layers.len() {
                let mut line = format!("leq {j}");
                push_ints(&mut line, p.leq.below(j).map(|i| i as i64));
                let _ = writeln!(body, "{line}");
            }
            let mut line = String::from("mobius");
            push_ints(&mut line, p.mobius.iter().copied());
            let _ = writeln!(body, "{line}");
        }
        Artifact::CharTable(t) => {
            let _ = writeln!(body, "meta {} {}", t.group_order, t.class_sizes.len());
            let mut line = String::from("sizes");
            push_ints(&mut line, t.class_sizes.iter().copied());
            let _ = writeln!(body, "{line}");
            let mut line = String::from("orders");
            push_ints(&mut line, t.class_orders.iter().map(|&x| x as i64));
            let _ = writeln!(body, "{line}");
            let mut line = String::from("inv");
            push_ints(&mut line, t.inverse_class.iter().map(|&x| x as i64));
            let _ = writeln!(body, "{line}");
            for (i, chi) in t.values.iter().enumerate() {
                let mut line = format!("chi {}", t.labels[i]);
                push_ints(&mut line, chi.iter().copied());
                let _ = writeln!(body, "{line}");
            }
        }
        Artifact::Group(g) => {
            let rank = g.roots_amb.first().map_or(0, |r| r.len());
            let _ = writeln!(
                body,
                "meta {} {} {} {}",
                g.label,
                rank,
                g.roots_amb.len(),
                g.elements.len()
            );
            for r in &g.roots_amb {
                let mut line = String::from("root");
                push_ints(&mut line, r.iter().copied());
                let _ = writeln!(body, "{line}");
            }
            for p in &g.elements {
                let mut line = String::from("perm");
                push_ints(&mut line, p.iter().map(|&x| x as i64));
                let _ = writeln!(body, "{line}");
            }
        }
        Artifact::Polys(t) => {
            let _ = writeln!(body, "meta {}", t.labels.len());
            for (l, p) in t.labels.iter().zip(&t.polys) {
                let mut line = format!("poly {l}");
                push_ints(&mut line, p.coeffs().iter().copied());
                let _ = writeln!(body, "{line}");
            }
        }
    }
    let digest = Sha256::digest(body.as_bytes());
    let mut out = format!("weylcoh-cache {} {}\n", FORMAT_VERSION, artifact.kind());
    out.push_str(&body);
    let _ = writeln!(out, "sum {digest:x}");
    out
}

struct Lines<'a> {
    rest: std::str::Lines<'a>,
    lineno: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<&'a str, CacheError> {
        self.lineno += 1;
        self.rest
            .next()
            .ok_or_else(|| CacheError::Format(self.lineno, "unexpected end of input".into()))
    }

    fn err(&self, msg: impl Into<String>) -> CacheError {
        CacheError::Format(self.lineno, msg.into())
    }
}

/// Canonical-decimal integer parse: rejects leading zeros, plus signs and
/// anything `to_string` would not have produced.
fn parse_i64(s: &str, lines: &Lines) -> Result<i64, CacheError> {
    let x: i64 = s.parse().map_err(|_| lines.err(format!("bad integer `{s}`")))?;
    if x.to_string() != s {
        return Err(lines.err(format!("non-canonical integer `{s}`")));
    }
    Ok(x)
}

fn parse_count(s: &str, lines: &Lines) -> Result<usize, CacheError> {
    let x = parse_i64(s, lines)?;
    if x < 0 || x as usize > MAX_COUNT {
        return Err(lines.err(format!("count {x} out of range")));
    }
    Ok(x as usize)
}

fn expect_tag<'a>(line: &'a str, tag: &str, lines: &Lines) -> Result<Vec<&'a str>, CacheError> {
    let mut parts = line.split(' ');
    if parts.next() != Some(tag) {
        return Err(lines.err(format!("expected `{tag}` record")));
    }
    let fields: Vec<&str> = parts.collect();
    if fields.iter().any(|f| f.is_empty()) {
        return Err(lines.err("double space".to_string()));
    }
    Ok(fields)
}

fn int_fields(fields: &[&str], lines: &Lines) -> Result<Vec<i64>, CacheError> {
    fields.iter().map(|f| parse_i64(f, lines)).collect()
}

/// Parse a canonical serialization, verifying version and checksum and every
/// structural invariant the serializer guarantees.
pub fn deserialize(text: &str) -> Result<Artifact, CacheError> {
    let mut lines = Lines { rest: text.lines(), lineno: 0 };
    let header = lines.next()?;
    let hf = expect_tag(header, "weylcoh-cache", &lines)?;
    if hf.len() != 2 {
        return Err(lines.err("bad header"));
    }
    let version: u32 = hf[0].parse().map_err(|_| lines.err("bad version"))?;
    if version != FORMAT_VERSION {
        return Err(CacheError::Version(version));
    }
    // Split off the trailing checksum line and verify it first.
    let body_start = text.find('\n').ok_or_else(|| lines.err("missing body"))? + 1;
    let body_full = &text[body_start..];
    let sum_at = body_full
        .rfind("\nsum ")
        .map(|i| i + 1)
        .or_else(|| body_full.starts_with("sum ").then_some(0))
        .ok_or(CacheError::Checksum)?;
    let body = &body_full[..sum_at];
    let sum_line = body_full[sum_at..].strip_suffix('\n').unwrap_or(&body_full[sum_at..]);
    let digest = Sha256::digest(body.as_bytes());
    if sum_line != format!("sum {digest:x}") {
        return Err(CacheError::Checksum);
    }
    match hf[1] {
        "poset" => {
            let meta = expect_tag(lines.next()?, "meta", &lines)?;
            if meta.len() != 4 {
                return Err(lines.err("meta needs 4 fields"));
            }
            let kind = match meta[0] {
                "linear" => ArrKind::Linear,
                "toric" => ArrKind::Toric,
                other => return Err(lines.err(format!("bad kind `{other}`"))),
            };
            let rank = parse_count(meta[1], &lines)?;
            let nroots = parse_count(meta[2], &lines)?;
            let nlayers = parse_count(meta[3], &lines)?;
            if rank == 0 || rank > 64 || nlayers == 0 {
                return Err(lines.err("bad dimensions"));
            }
            let mut roots = Vec::new();
            for _ in 0..nroots {
                let f = expect_tag(lines.next()?, "root", &lines)?;
                if f.len() != rank {
                    return Err(lines.err("root length mismatch"));
                }
                roots.push(int_fields(&f, &lines)?);
            }
            let mut layers = Vec::new();
            for _ in 0..nlayers {
                let line = lines.next()?;
                let f = expect_tag(line, "layer", &lines)?;
                if f.is_empty() {
                    return Err(lines.err("layer needs a codimension"));
                }
                let codim = parse_count(f[0], &lines)?;
                if codim > rank {
                    return Err(lines.err("codim exceeds rank"));
                }
                let vals = if kind == ArrKind::Toric { codim } else { 0 };
                if f.len() != 1 + codim * rank + vals {
                    return Err(lines.err("layer field count mismatch"));
                }
                let a = int_fields(&f[1..1 + codim * rank], &lines)?;
                let mut values = Vec::with_capacity(vals);
                for v in &f[1 + codim * rank..] {
                    let (n, d) = v
                        .split_once('/')
                        .ok_or_else(|| lines.err(format!("bad fraction `{v}`")))?;
                    let n = parse_i64(n, &lines)?;
                    let d = parse_i64(d, &lines)?;
                    if d <= 0 || n < 0 || n >= d {
                        return Err(lines.err("fraction not in canonical [0,1) form"));
                    }
                    let fr = Frac::new(n as i128, d as i128);
                    if fr.num() != n as i128 || fr.den() != d as i128 {
                        return Err(lines.err("fraction not reduced"));
                    }
                    values.push(fr);
                }
                layers.push(Layer { basis: IMat { rows: codim, cols: rank, a }, values });
            }
            let mut leq = BitMatrix::new(nlayers);
            for j in 0..nlayers {
                let f = expect_tag(lines.next()?, "leq", &lines)?;
                let idx = int_fields(&f, &lines)?;
                if idx.first() != Some(&(j as i64)) {
                    return Err(lines.err("leq records out of order"));
                }
                let mut prev = -1i64;
                for &i in &idx[1..] {
                    if i <= prev || i >= nlayers as i64 {
                        return Err(lines.err("leq indices not strictly increasing"));
                    }
                    prev = i;
                    leq.set(i as usize, j);
                }
            }
            let f = expect_tag(lines.next()?, "mobius", &lines)?;
            if f.len() != nlayers {
                return Err(lines.err("mobius length mismatch"));
            }
            let mobius = int_fields(&f, &lines)?;
            Ok(Artifact::Poset(ArrangementPoset { kind, rank, roots, layers, leq, mobius }))
        }
        "chartab" => {
            let meta = expect_tag(lines.next()?, "meta", &lines)?;
            if meta.len() != 2 {
                return Err(lines.err("meta needs 2 fields"));
            }
            let group_order = parse_i64(meta[0], &lines)?;
            let n = parse_count(meta[1], &lines)?;
            if group_order <= 0 || n == 0 {
                return Err(lines.err("bad dimensions"));
            }
            let f = expect_tag(lines.next()?, "sizes", &lines)?;
            if f.len() != n {
                return Err(lines.err("sizes length mismatch"));
            }
            let class_sizes = int_fields(&f, &lines)?;
            let f = expect_tag(lines.next()?, "orders", &lines)?;
            if f.len() != n {
                return Err(lines.err("orders length mismatch"));
            }
            let class_orders: Vec<u32> = int_fields(&f, &lines)?
                .into_iter()
                .map(|x| u32::try_from(x).map_err(|_| lines.err("negative order")))
                .collect::<Result<_, _>>()?;
            let f = expect_tag(lines.next()?, "inv", &lines)?;
            if f.len() != n {
                return Err(lines.err("inv length mismatch"));
            }
            let inverse_class: Vec<usize> = int_fields(&f, &lines)?
                .into_iter()
                .map(|x| {
                    if x < 0 || x >= n as i64 {
                        Err(lines.err("inv index out of range"))
                    } else {
                        Ok(x as usize)
                    }
                })
                .collect::<Result<_, _>>()?;
            let mut labels = Vec::new();
            let mut values = Vec::new();
            for _ in 0..n {
                let f = expect_tag(lines.next()?, "chi", &lines)?;
                if f.len() != n + 1 {
                    return Err(lines.err("chi length mismatch"));
                }
                labels.push(f[0].to_string());
                values.push(int_fields(&f[1..], &lines)?);
            }
            Ok(Artifact::CharTable(CharTable {
                group_order,
                class_sizes,
                class_orders,
                inverse_class,
                values,
                labels,
            }))
        }
        "group" => {
            let meta = expect_tag(lines.next()?, "meta", &lines)?;
            if meta.len() != 4 {
                return Err(lines.err("meta needs 4 fields"));
            }
            let label = meta[0].to_string();
            let rank = parse_count(meta[1], &lines)?;
            let nroots = parse_count(meta[2], &lines)?;
            let order = parse_count(meta[3], &lines)?;
            if nroots > 255 {
                return Err(lines.err("too many roots for a permutation byte"));
            }
            let mut roots_amb = Vec::new();
            for _ in 0..nroots {
                let f = expect_tag(lines.next()?, "root", &lines)?;
                if f.len() != rank {
                    return Err(lines.err("root length mismatch"));
                }
                roots_amb.push(int_fields(&f, &lines)?);
            }
            let mut elements = Vec::new();
            for _ in 0..order {
                let f = expect_tag(lines.next()?, "perm", &lines)?;
                if f.len() != nroots {
                    return Err(lines.err("perm length mismatch"));
                }
                let p: Vec<u8> = int_fields(&f, &lines)?
                    .into_iter()
                    .map(|x| {
                        if x < 0 || x >= nroots as i64 {
                            Err(lines.err("perm image out of range"))
                        } else {
                            Ok(x as u8)
                        }
                    })
                    .collect::<Result<_, _>>()?;
                elements.push(p);
            }
            Ok(Artifact::Group(GroupRecord { label, roots_amb, elements }))
        }
        "polys" => {
            let meta = expect_tag(lines.next()?, "meta", &lines)?;
            if meta.len() != 1 {
                return Err(lines.err("meta needs 1 field"));
            }
            let n = parse_count(meta[0], &lines)?;
            let mut labels = Vec::new();
            let mut polys = Vec::new();
            for _ in 0..n {
                let f = expect_tag(lines.next()?, "poly", &lines)?;
                if f.is_empty() {
                    return Err(lines.err("poly needs a label"));
                }
                labels.push(f[0].to_string());
                let coeffs = int_fields(&f[1..], &lines)?;
                if coeffs.last() == Some(&0) {
                    return Err(lines.err("non-canonical trailing zero coefficient"));
                }
                polys.push(IPoly::from_coeffs(coeffs));
            }
            Ok(Artifact::Polys(PolyTable { labels, polys }))
        }
        other => Err(lines.err(format!("unknown artifact kind `{other}`"))),
    }
}

/// Usage counters, observable through the CLI `--stats` flag.
#[derive(Debug, Default, Clone)]
pub struct CacheStats {
    pub hits: Cell<u64>,
    pub misses: Cell<u64>,
    pub writes: Cell<u64>,
}

/// A directory-backed artifact cache. With no directory configured every
/// lookup is a miss and stores are dropped.
pub struct Cache {
    dir: Option<PathBuf>,
    pub stats: CacheStats,
}

impl Cache {
    /// Resolve the cache directory: explicit flag, else the `WEYLCOH_CACHE`
    /// environment variable, else disabled.
    pub fn from_flag(flag: Option<&Path>) -> Cache {
        let dir = flag
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os("WEYLCOH_CACHE").map(PathBuf::from));
        Cache { dir, stats: CacheStats::default() }
    }

    pub fn disabled() -> Cache {
        Cache { dir: None, stats: CacheStats::default() }
    }

    pub fn enabled(&self) -> bool {
        self.dir.is_some()
    }

    /// Content-hash key of an artifact description (kind, parameters,
    /// code-version tag).
    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(format!("v{FORMAT_VERSION}"));
        for p in parts {
            h.update([0u8]);
            h.update(p.as_bytes());
        }
        format!("{:x}", h.finalize())
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.wc")))
    }

    /// Look an artifact up; unparsable or stale entries count as misses.
    pub fn load(&self, key: &str) -> Option<Artifact> {
        let path = self.path_for(key)?;
        match fs::read_to_string(&path).ok().and_then(|s| deserialize(&s).ok()) {
            Some(a) => {
                self.stats.hits.set(self.stats.hits.get() + 1);
                Some(a)
            }
            None => {
                self.stats.misses.set(self.stats.misses.get() + 1);
                None
            }
        }
    }

    /// Write an artifact atomically (temp file in the same directory, then
    /// rename over the final path).
    pub fn store(&self, key: &str, artifact: &Artifact) -> Result<(), CacheError> {
        let Some(path) = self.path_for(key) else { return Ok(()) };
        let dir = path.parent().expect("cache path has a parent");
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".{key}.tmp.{}", std::process::id()));
        fs::write(&tmp, serialize(artifact))?;
        fs::rename(&tmp, &path)?;
        self.stats.writes.set(self.stats.writes.get() + 1);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::{hyperplane_poset, toric_poset};
    use crate::chartab::character_table;
    use crate::weyl::{root_system_a, weyl_group};

    fn roundtrip(a: &Artifact) -> Artifact {
        let text = serialize(a);
        let back = deserialize(&text).expect("round-trip parse");
        assert_eq!(serialize(&back), text, "round-trip is the identity");
        back
    }

    #[test]
    fn group_record_roundtrip() {
        let g = weyl_group(root_system_a(3));
        let rec = GroupRecord {
            label: g.rs.label.clone(),
            roots_amb: g.rs.roots_amb.clone(),
            elements: g.elements.clone(),
        };
        let back = roundtrip(&Artifact::Group(rec.clone()));
        let Artifact::Group(b) = back else { panic!("wrong kind") };
        assert_eq!(b, rec);
    }

    #[test]
    fn poset_roundtrips() {
        let rs = root_system_a(3);
        for arr in [toric_poset(&rs), hyperplane_poset(&rs)] {
            let n = arr.layers.len();
            let back = roundtrip(&Artifact::Poset(arr));
            let Artifact::Poset(b) = back else { panic!("wrong kind") };
            assert_eq!(b.layers.len(), n);
        }
    }

    #[test]
    fn chartab_roundtrip() {
        let g = weyl_group(root_system_a(4));
        let t = character_table(&g).unwrap();
        let vals = t.values.clone();
        let back = roundtrip(&Artifact::CharTable(t));
        let Artifact::CharTable(b) = back else { panic!("wrong kind") };
        assert_eq!(b.values, vals);
    }

    #[test]
    fn polys_roundtrip() {
        let t = PolyTable {
            labels: vec!["c1".into(), "c2".into()],
            polys: vec![IPoly::from_coeffs(vec![1, -2, 3]), IPoly::zero()],
        };
        let back = roundtrip(&Artifact::Polys(t.clone()));
        let Artifact::Polys(b) = back else { panic!("wrong kind") };
        assert_eq!(b, t);
    }

    #[test]
    fn rejects_tampering() {
        let t = PolyTable { labels: vec!["c1".into()], polys: vec![IPoly::from_coeffs(vec![7])] };
        let good = serialize(&Artifact::Polys(t));
        assert!(deserialize(&good).is_ok());
        // Flip a digit in the body: checksum must catch it.
        let bad = good.replace("poly c1 7", "poly c1 8");
        assert!(matches!(deserialize(&bad), Err(CacheError::Checksum)));
        // Wrong version.
        let bad = good.replace("weylcoh-cache 1", "weylcoh-cache 2");
        assert!(matches!(deserialize(&bad), Err(CacheError::Version(2))));
        // Truncation.
        assert!(deserialize(&good[..good.len() / 2]).is_err());
        // Non-canonical integer.
        let t2 = PolyTable { labels: vec!["c1".into()], polys: vec![IPoly::from_coeffs(vec![07])] };
        let retagged = serialize(&Artifact::Polys(t2)).replace("poly c1 7", "poly c1 +7");
        assert!(deserialize(&retagged).is_err());
    }

    #[test]
    fn cache_store_load_atomic() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::from_flag(Some(dir.path()));
        let key = Cache::key(&["polys", "test", "A2"]);
        assert!(cache.load(&key).is_none());
        let t = PolyTable { labels: vec!["id".into()], polys: vec![IPoly::from_coeffs(vec![6, 5, 1])] };
        cache.store(&key, &Artifact::Polys(t.clone())).unwrap();
        let Some(Artifact::Polys(b)) = cache.load(&key) else { panic!("cache miss") };
        assert_eq!(b, t);
        assert_eq!(cache.stats.hits.get(), 1);
        assert_eq!(cache.stats.writes.get(), 1);
    }
}

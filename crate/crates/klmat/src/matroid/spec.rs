//! Matroid encodings and the spec mini-language.
//!
//! Grammar accepted by [`MatroidSpec::parse`]:
//!
//! * `uniform:m,d` — uniform matroid of rank `d` on `m + d` elements
//! * `boolean:n` — Boolean matroid on `n` elements
//! * `braid:n` — braid matroid of the complete graph on `n` vertices
//! * `graph:@FILE` — one `u v` edge per line, 0-based vertices
//! * `matrix:@FILE` — first line `p r c`, then `r` rows of `c` entries over GF(p)
//! * `flats:@FILE` — JSON list of `{"members": [int], "rank": int}`

use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::families::partitions::set_partitions;
use crate::families::counting::{bell, binomial};

use super::lattice::{
    partition_to_edge_bits, Bits, Family, FlatLattice, DEFAULT_FLAT_CAP, MAX_GROUND,
};

/// One of the supported matroid encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidSpec {
    /// Uniform matroid of rank `d` on `m + d` elements.
    Uniform { m: usize, d: usize },
    Boolean { n: usize },
    /// Braid matroid on the edge set of `K_n`.
    Braid { n: usize },
    /// Edge list of a multigraph on `vertices` vertices.
    Graph {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Column vectors over GF(p), row-major entries.
    Matrix {
        p: u64,
        rows: usize,
        cols: usize,
        entries: Vec<u64>,
    },
    /// An explicit list of closed sets with their ranks, validated on load.
    ExplicitFlats { flats: Vec<(Vec<usize>, usize)> },
}

#[derive(Deserialize)]
struct FlatRecord {
    members: Vec<usize>,
    rank: usize,
}

impl MatroidSpec {
    /// Parses the spec mini-language, loading `@FILE` payloads from disk.
    ///
    /// ```
    /// use klmat::matroid::MatroidSpec;
    /// let lat = MatroidSpec::parse("uniform:1,2")?.build()?;
    /// assert_eq!(lat.flat_count(), 5);
    /// assert_eq!(lat.char_poly().to_string(), "2 - 3t + t^2");
    /// # Ok::<(), klmat::Error>(())
    /// ```
    pub fn parse(s: &str) -> Result<MatroidSpec> {
        let (head, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::SpecParse(format!("expected `kind:args`, got `{s}`")))?;
        let num = |v: &str| -> Result<usize> {
            v.trim()
                .parse()
                .map_err(|_| Error::SpecParse(format!("bad integer `{v}` in `{s}`")))
        };
        match head {
            "uniform" => {
                let (m, d) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::SpecParse(format!("uniform needs `m,d`: `{s}`")))?;
                Ok(MatroidSpec::Uniform {
                    m: num(m)?,
                    d: num(d)?,
                })
            }
            "boolean" => Ok(MatroidSpec::Boolean { n: num(rest)? }),
            "braid" => Ok(MatroidSpec::Braid { n: num(rest)? }),
            "graph" => Self::parse_graph_file(file_arg(rest, s)?),
            "matrix" => Self::parse_matrix_file(file_arg(rest, s)?),
            "flats" => Self::parse_flats_file(file_arg(rest, s)?),
            _ => Err(Error::SpecParse(format!("unknown matroid kind `{head}`"))),
        }
    }

    fn parse_graph_file(path: &Path) -> Result<MatroidSpec> {
        let text = std::fs::read_to_string(path)?;
        let mut edges = Vec::new();
        let mut vmax = 0;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (u, v) = (it.next(), it.next());
            match (u, v, it.next()) {
                (Some(u), Some(v), None) => {
                    let u: usize = u.parse().map_err(|_| bad_line(lineno, line))?;
                    let v: usize = v.parse().map_err(|_| bad_line(lineno, line))?;
                    if u.max(v) >= 1_000_000 {
                        return Err(Error::SpecParse(format!(
                            "vertex {} too large (max 10^6)",
                            u.max(v)
                        )));
                    }
                    vmax = vmax.max(u + 1).max(v + 1);
                    edges.push((u, v));
                }
                _ => return Err(bad_line(lineno, line)),
            }
        }
        Ok(MatroidSpec::Graph {
            vertices: vmax,
            edges,
        })
    }

    fn parse_matrix_file(path: &Path) -> Result<MatroidSpec> {
        let text = std::fs::read_to_string(path)?;
        let mut numbers = text.split_whitespace().map(|w| {
            w.parse::<u64>()
                .map_err(|_| Error::SpecParse(format!("bad matrix entry `{w}`")))
        });
        let mut next = |what: &str| {
            numbers
                .next()
                .unwrap_or_else(|| Err(Error::SpecParse(format!("missing {what}"))))
        };
        let p = next("prime p")?;
        if !is_prime(p) {
            return Err(Error::SpecParse(format!("{p} is not prime")));
        }
        let rows = next("row count")? as usize;
        let cols = next("column count")? as usize;
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let e = next("matrix entry")?;
            if e >= p {
                return Err(Error::SpecParse(format!("entry {e} not in [0,{p})")));
            }
            entries.push(e);
        }
        Ok(MatroidSpec::Matrix {
            p,
            rows,
            cols,
            entries,
        })
    }

    fn parse_flats_file(path: &Path) -> Result<MatroidSpec> {
        let text = std::fs::read_to_string(path)?;
        let records: Vec<FlatRecord> = serde_json::from_str(&text)
            .map_err(|e| Error::SpecParse(format!("flats JSON: {e}")))?;
        Ok(MatroidSpec::ExplicitFlats {
            flats: records.into_iter().map(|r| (r.members, r.rank)).collect(),
        })
    }

    /// Builds the full lattice of flats with the default flat cap.
    pub fn build(&self) -> Result<FlatLattice> {
        self.build_with_cap(DEFAULT_FLAT_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<FlatLattice> {
        match self {
            MatroidSpec::Boolean { n } => build_boolean(*n, cap),
            MatroidSpec::Uniform { m, d } => build_uniform(*m, *d, cap),
            MatroidSpec::Braid { n } => build_braid(*n, cap),
            MatroidSpec::Graph { vertices, edges } => {
                let oracle = GraphOracle {
                    vertices: *vertices,
                    edges: edges.clone(),
                };
                build_from_oracle(&oracle, cap, None)
            }
            MatroidSpec::Matrix {
                p,
                rows,
                cols,
                entries,
            } => {
                let oracle = MatrixOracle::new(*p, *rows, *cols, entries)?;
                build_from_oracle(&oracle, cap, None)
            }
            MatroidSpec::ExplicitFlats { flats } => build_explicit(flats, cap),
        }
    }
}

fn file_arg<'a>(rest: &'a str, full: &str) -> Result<&'a Path> {
    rest.strip_prefix('@')
        .map(Path::new)
        .ok_or_else(|| Error::SpecParse(format!("expected `@FILE` in `{full}`")))
}

fn bad_line(lineno: usize, line: &str) -> Error {
    Error::SpecParse(format!("graph line {}: `{line}`", lineno + 1))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n));
    }
    Ok(())
}

fn check_count(count: &num_bigint::BigInt, cap: usize, what: &str) -> Result<()> {
    if *count > num_bigint::BigInt::from(cap) {
        return Err(Error::TooLarge {
            cap,
            detail: format!("{what} has {count} flats"),
        });
    }
    Ok(())
}

fn build_boolean(n: usize, cap: usize) -> Result<FlatLattice> {
    check_ground(n)?;
    check_count(
        &(num_bigint::BigInt::from(1) << n),
        cap,
        &format!("boolean:{n}"),
    )?;
    let parts = (0..1u128 << n)
        .map(|bits| (bits, bits.count_ones()))
        .collect();
    Ok(FlatLattice::from_parts(n, parts, Some(Family::Boolean { n })))
}

fn build_uniform(m: usize, d: usize, cap: usize) -> Result<FlatLattice> {
    let n = m + d;
    check_ground(n)?;
    if d == 0 && m > 0 {
        // rank 0 on a nonempty ground set: every element is a loop
        return Err(Error::LoopsPresent(0));
    }
    let mut count = num_bigint::BigInt::from(1);
    for i in 0..d {
        count += binomial(n as u64, i as i64);
    }
    check_count(&count, cap, &format!("uniform:{m},{d}"))?;
    let full: Bits = if n == 0 { 0 } else { (1 << n) - 1 };
    let mut parts = vec![(full, d as u32)];
    let mut stack = vec![(0u128, 0usize, 0usize)]; // (bits, next element, size)
    while let Some((bits, from, size)) = stack.pop() {
        if size < d {
            parts.push((bits, size as u32));
            for e in from..n {
                stack.push((bits | 1 << e, e + 1, size + 1));
            }
        }
    }
    Ok(FlatLattice::from_parts(
        n,
        parts,
        Some(Family::Uniform { m, d }),
    ))
}

fn build_braid(n: usize, cap: usize) -> Result<FlatLattice> {
    let edge_count = n * n.saturating_sub(1) / 2;
    check_ground(edge_count)?;
    check_count(&bell(n), cap, &format!("braid:{n}"))?;
    let parts = set_partitions(n)
        .into_iter()
        .map(|blocks| {
            let rank = n - blocks.len();
            (partition_to_edge_bits(n, &blocks), rank as u32)
        })
        .collect();
    Ok(FlatLattice::from_parts(
        edge_count,
        parts,
        Some(Family::Braid { n }),
    ))
}

fn build_explicit(flats: &[(Vec<usize>, usize)], cap: usize) -> Result<FlatLattice> {
    if flats.len() > cap {
        return Err(Error::TooLarge {
            cap,
            detail: format!("{} explicit flats", flats.len()),
        });
    }
    let ground = flats
        .iter()
        .flat_map(|(members, _)| members.iter().copied())
        .max()
        .map_or(0, |e| e + 1);
    check_ground(ground)?;
    let mut parts = Vec::with_capacity(flats.len());
    for (members, rank) in flats {
        let mut bits: Bits = 0;
        for &e in members {
            bits |= 1 << e;
        }
        if bits.count_ones() as usize != members.len() {
            return Err(Error::InvalidLattice(format!(
                "duplicate members in flat {members:?}"
            )));
        }
        parts.push((bits, *rank as u32));
    }
    let seen: std::collections::HashSet<Bits> = parts.iter().map(|&(b, _)| b).collect();
    if seen.len() != parts.len() {
        return Err(Error::InvalidLattice("duplicate flats".into()));
    }
    let lat = FlatLattice::from_parts(ground, parts, None);
    lat.validate_geometric()?;
    Ok(lat)
}

/// A rank oracle over subsets of the ground set; closures and the flat
/// enumeration are generic over it.
trait RankOracle {
    fn ground_size(&self) -> usize;
    fn rank(&self, bits: Bits) -> usize;
}

struct GraphOracle {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl RankOracle for GraphOracle {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    /// `rank(S) = v - #components of (V, S)`.
    fn rank(&self, bits: Bits) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        let mut components = self.vertices;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if bits >> i & 1 == 1 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a != b {
                    parent[a] = b;
                    components -= 1;
                }
            }
        }
        self.vertices - components
    }
}

struct MatrixOracle {
    p: u64,
    rows: usize,
    cols: Vec<Vec<u64>>,
}

impl MatrixOracle {
    fn new(p: u64, rows: usize, cols: usize, entries: &[u64]) -> Result<Self> {
        // products of two residues must fit in u64
        if p >= 1 << 31 {
            return Err(Error::SpecParse(format!("prime {p} too large (max 2^31)")));
        }
        if !is_prime(p) {
            return Err(Error::SpecParse(format!("{p} is not prime")));
        }
        if entries.len() != rows * cols {
            return Err(Error::SpecParse(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&e| e >= p) {
            return Err(Error::SpecParse(format!("entry {bad} not in [0,{p})")));
        }
        let col_vecs = (0..cols)
            .map(|c| (0..rows).map(|r| entries[r * cols + c]).collect())
            .collect();
        Ok(MatrixOracle {
            p,
            rows,
            cols: col_vecs,
        })
    }
}

impl RankOracle for MatrixOracle {
    fn ground_size(&self) -> usize {
        self.cols.len()
    }

    /// Column rank by Gaussian elimination over GF(p).
    fn rank(&self, bits: Bits) -> usize {
        let mut mat: Vec<Vec<u64>> = self
            .cols
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, c)| c.clone())
            .collect();
        let p = self.p;
        let mut rank = 0;
        for row in 0..self.rows {
            let Some(pivot) = (rank..mat.len()).find(|&c| mat[c][row] % p != 0) else {
                continue;
            };
            mat.swap(rank, pivot);
            let inv = mod_inverse(mat[rank][row], p);
            for c in 0..mat.len() {
                if c != rank && mat[c][row] % p != 0 {
                    let factor = mat[c][row] % p * inv % p;
                    for r in row..self.rows {
                        let sub = factor * (mat[rank][r] % p) % p;
                        mat[c][r] = (mat[c][r] % p + p - sub) % p;
                    }
                }
            }
            rank += 1;
            if rank == mat.len() {
                break;
            }
        }
        rank
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Enumerates all flats of a rank oracle by repeated closure, starting from
/// the closure of the empty set.
fn build_from_oracle<O: RankOracle>(
    oracle: &O,
    cap: usize,
    family: Option<Family>,
) -> Result<FlatLattice> {
    let n = oracle.ground_size();
    check_ground(n)?;
    for e in 0..n {
        if oracle.rank(1 << e) == 0 {
            return Err(Error::LoopsPresent(e));
        }
    }
    let closure = |bits: Bits| -> (Bits, usize) {
        let r = oracle.rank(bits);
        let mut closed = bits;
        for e in 0..n {
            if closed >> e & 1 == 0 && oracle.rank(bits | 1 << e) == r {
                closed |= 1 << e;
            }
        }
        (closed, r)
    };
    let mut found: HashMap<Bits, usize> = HashMap::new();
    let (bottom, r0) = closure(0);
    debug_assert_eq!(r0, 0);
    debug_assert_eq!(bottom, 0, "loopless matroids close the empty set to itself");
    found.insert(bottom, r0);
    let mut queue = vec![bottom];
    while let Some(flat) = queue.pop() {
        for e in 0..n {
            if flat >> e & 1 == 1 {
                continue;
            }
            let (closed, r) = closure(flat | 1 << e);
            if !found.contains_key(&closed) {
                if found.len() >= cap {
                    return Err(Error::TooLarge {
                        cap,
                        detail: "flat enumeration exceeded the cap".into(),
                    });
                }
                found.insert(closed, r);
                queue.push(closed);
            }
        }
    }
    let parts = found.into_iter().map(|(b, r)| (b, r as u32)).collect();
    Ok(FlatLattice::from_parts(n, parts, family))
}

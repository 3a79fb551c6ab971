//! The lattice of flats and its core operations.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Flats are stored as 128-bit sets over the ground set `0..ground_size`.
pub type Bits = u128;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 128;

/// Default cap on the number of flats a lattice may have.
pub const DEFAULT_FLAT_CAP: usize = 1_000_000;

/// A subset of the ground set, encoded as a bitset.
///
/// A `Flat` held by a [`FlatLattice`] is closed; the type itself is just a
/// set of element indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat(Bits);

impl Flat {
    pub fn empty() -> Self {
        Flat(0)
    }

    pub fn from_bits(bits: Bits) -> Self {
        Flat(bits)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        let mut bits = 0;
        for e in elems {
            assert!(e < MAX_GROUND, "element {e} out of range");
            bits |= 1 << e;
        }
        Flat(bits)
    }

    pub fn bits(&self) -> Bits {
        self.0
    }

    pub fn contains(&self, e: usize) -> bool {
        e < MAX_GROUND && self.0 >> e & 1 == 1
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &Flat) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &Flat) -> Flat {
        Flat(self.0 | other.0)
    }

    pub fn intersection(&self, other: &Flat) -> Flat {
        Flat(self.0 & other.0)
    }

    pub fn elems(&self) -> Vec<usize> {
        (0..MAX_GROUND).filter(|&e| self.contains(e)).collect()
    }
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Built-in family a lattice is known to come from, used for interval
/// recognition in the Möbius algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Boolean matroid on `n` elements; the lattice is the subset lattice.
    Boolean { n: usize },
    /// Uniform matroid of rank `d` on `m + d` elements.
    Uniform { m: usize, d: usize },
    /// Braid matroid of the complete graph on `n` vertices; the lattice is
    /// the partition lattice of `[n]` and the ground set is the edge set.
    Braid { n: usize },
}

/// Which kind of doubly indexed Whitney number to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhitneyKind {
    /// `w_{i,j}`: Möbius sums over pairs of flats of ranks `i` and `j`.
    First,
    /// `W_{i,j}`: the number of comparable pairs of ranks `i` and `j`.
    Second,
}

/// The complete lattice of flats of a loopless matroid.
///
/// Flats are sorted by `(rank, bitset value)`; every iteration order in the
/// crate derives from this one. The struct is immutable after construction;
/// the Möbius cache behind a mutex only ever grows with values that are
/// identical no matter which thread computes them.
pub struct FlatLattice {
    ground_size: usize,
    flats: Vec<Bits>,
    ranks: Vec<u32>,
    index: HashMap<Bits, u32>,
    family: Option<Family>,
    /// Memoized Möbius values keyed by (lower id, upper id).
    mobius_memo: Mutex<HashMap<(u32, u32), BigInt>>,
}

impl PartialEq for FlatLattice {
    fn eq(&self, other: &Self) -> bool {
        self.ground_size == other.ground_size
            && self.flats == other.flats
            && self.ranks == other.ranks
    }
}

impl fmt::Debug for FlatLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FlatLattice {{ ground: {}, flats: {}, rank: {} }}",
            self.ground_size,
            self.flats.len(),
            self.rank()
        )
    }
}

impl FlatLattice {
    /// Builds a lattice from `(bits, rank)` pairs. The caller guarantees the
    /// pairs describe a geometric lattice; ordering and indexing happen here.
    pub(crate) fn from_parts(
        ground_size: usize,
        mut parts: Vec<(Bits, u32)>,
        family: Option<Family>,
    ) -> Self {
        parts.sort_by_key(|&(bits, rank)| (rank, bits));
        parts.dedup();
        let flats: Vec<Bits> = parts.iter().map(|&(b, _)| b).collect();
        let ranks: Vec<u32> = parts.iter().map(|&(_, r)| r).collect();
        let index = flats
            .iter()
            .enumerate()
            .map(|(i, &b)| (b, i as u32))
            .collect();
        FlatLattice {
            ground_size,
            flats,
            ranks,
            index,
            family,
            mobius_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn flat_count(&self) -> usize {
        self.flats.len()
    }

    /// Rank of the matroid (= rank of the top flat).
    pub fn rank(&self) -> usize {
        *self.ranks.last().unwrap() as usize
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn bottom(&self) -> Flat {
        Flat(self.flats[0])
    }

    pub fn top(&self) -> Flat {
        Flat(*self.flats.last().unwrap())
    }

    /// All flats in `(rank, bitset)` order.
    pub fn flats(&self) -> impl Iterator<Item = Flat> + '_ {
        self.flats.iter().map(|&b| Flat(b))
    }

    /// The flat at a position of the `(rank, bitset)` order.
    pub fn flat_at(&self, index: usize) -> Flat {
        Flat(self.flats[index])
    }

    pub fn contains_flat(&self, f: &Flat) -> bool {
        self.index.contains_key(&f.bits())
    }

    pub fn rank_of(&self, f: &Flat) -> Result<usize> {
        Ok(self.ranks[self.id(f)? as usize] as usize)
    }

    /// `rk M - rk F`, the corank.
    pub fn corank_of(&self, f: &Flat) -> Result<usize> {
        Ok(self.rank() - self.rank_of(f)?)
    }

    pub(crate) fn id(&self, f: &Flat) -> Result<u32> {
        self.index
            .get(&f.bits())
            .copied()
            .ok_or_else(|| Error::FlatNotInLattice(f.to_string()))
    }

    pub(crate) fn flat_by_id(&self, id: u32) -> Flat {
        Flat(self.flats[id as usize])
    }

    pub(crate) fn rank_by_id(&self, id: u32) -> u32 {
        self.ranks[id as usize]
    }

    pub(crate) fn leq_ids(&self, a: u32, b: u32) -> bool {
        self.flats[a as usize] & !self.flats[b as usize] == 0
    }

    /// Inclusion order on flats of this lattice.
    pub fn leq(&self, a: &Flat, b: &Flat) -> bool {
        a.is_subset(b)
    }

    /// Meet of two flats. The intersection of closed sets is closed.
    pub fn meet(&self, a: &Flat, b: &Flat) -> Result<Flat> {
        self.id(a)?;
        self.id(b)?;
        let m = a.intersection(b);
        self.id(&m)
            .map(|_| m)
            .map_err(|_| Error::InvalidLattice(format!("meet {m} missing from lattice")))
    }

    /// Join of two flats: the smallest flat containing their union.
    pub fn join(&self, a: &Flat, b: &Flat) -> Result<Flat> {
        Ok(self.flat_by_id(self.join_ids(self.id(a)?, self.id(b)?)))
    }

    pub(crate) fn join_ids(&self, a: u32, b: u32) -> u32 {
        let u = self.flats[a as usize] | self.flats[b as usize];
        // flats are sorted by rank, so the first superset is the join
        for (i, &f) in self.flats.iter().enumerate() {
            if u & !f == 0 {
                return i as u32;
            }
        }
        unreachable!("top flat contains every union")
    }

    /// Ids of all flats `>= f`, ascending (hence in rank order).
    pub(crate) fn upset_ids(&self, f: u32) -> Vec<u32> {
        let bits = self.flats[f as usize];
        (0..self.flats.len() as u32)
            .filter(|&g| bits & !self.flats[g as usize] == 0)
            .collect()
    }

    /// Möbius values `mu(base, g)` for every `g` in the lattice, indexed by
    /// id. Entries for flats not above `base` are zero.
    pub(crate) fn mobius_row(&self, base: u32) -> Vec<BigInt> {
        let mut row = vec![BigInt::zero(); self.flats.len()];
        let up = self.upset_ids(base);
        row[base as usize] = BigInt::one();
        for (k, &g) in up.iter().enumerate().skip(1) {
            let mut s = BigInt::zero();
            for &h in &up[..k] {
                if self.leq_ids(h, g) {
                    s += &row[h as usize];
                }
            }
            row[g as usize] = -s;
        }
        row
    }

    pub(crate) fn mobius_ids(&self, e: u32, f: u32) -> BigInt {
        if let Some(v) = self.mobius_memo.lock().unwrap().get(&(e, f)) {
            return v.clone();
        }
        let row = self.mobius_row(e);
        let result = row[f as usize].clone();
        let mut memo = self.mobius_memo.lock().unwrap();
        for &g in &self.upset_ids(e) {
            memo.entry((e, g)).or_insert_with(|| row[g as usize].clone());
        }
        result
    }

    /// The Möbius function `mu(E, F)` of the lattice.
    ///
    /// Computed by the defining recursion `mu(E,E) = 1`,
    /// `sum_{E <= G <= F} mu(E,G) = 0` for `E < F`, memoized per lattice.
    pub fn mobius(&self, e: &Flat, f: &Flat) -> Result<BigInt> {
        let (ei, fi) = (self.id(e)?, self.id(f)?);
        if !self.leq_ids(ei, fi) {
            return Err(Error::NotComparable);
        }
        Ok(self.mobius_ids(ei, fi))
    }

    /// The characteristic polynomial
    /// `chi_M(t) = sum_F mu(bottom, F) t^(rk M - rk F)`.
    pub fn char_poly(&self) -> IntPoly {
        let row = self.mobius_row(0);
        let d = self.rank();
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (g, mu) in row.iter().enumerate() {
            coeffs[d - self.ranks[g] as usize] += mu;
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// The interval `[f, g]` relabeled as a standalone lattice.
    ///
    /// The new ground set is the set of atoms of the interval; each flat is
    /// re-encoded as the set of atoms below it. Original element labels are
    /// not preserved.
    pub fn interval(&self, f: &Flat, g: &Flat) -> Result<FlatLattice> {
        let (fi, gi) = (self.id(f)?, self.id(g)?);
        if !self.leq_ids(fi, gi) {
            return Err(Error::NotComparable);
        }
        let base_rank = self.ranks[fi as usize];
        let members: Vec<u32> = (0..self.flats.len() as u32)
            .filter(|&e| self.leq_ids(fi, e) && self.leq_ids(e, gi))
            .collect();
        let atoms: Vec<u32> = members
            .iter()
            .copied()
            .filter(|&e| self.ranks[e as usize] == base_rank + 1)
            .collect();
        let parts = members
            .iter()
            .map(|&e| {
                let mut bits: Bits = 0;
                for (a, &atom) in atoms.iter().enumerate() {
                    if self.leq_ids(atom, e) {
                        bits |= 1 << a;
                    }
                }
                (bits, self.ranks[e as usize] - base_rank)
            })
            .collect();
        let family = self.interval_family(fi, gi, atoms.len());
        Ok(FlatLattice::from_parts(atoms.len(), parts, family))
    }

    fn interval_family(&self, fi: u32, gi: u32, atom_count: usize) -> Option<Family> {
        let top_id = (self.flats.len() - 1) as u32;
        match self.family? {
            Family::Boolean { .. } => Some(Family::Boolean { n: atom_count }),
            Family::Uniform { m, d } => {
                if gi == top_id {
                    Some(Family::Uniform {
                        m,
                        d: d - self.ranks[fi as usize] as usize,
                    })
                } else {
                    // proper flats of a uniform matroid span Boolean intervals
                    Some(Family::Boolean { n: atom_count })
                }
            }
            Family::Braid { n } => {
                let fine = braid_blocks(n, self.flats[fi as usize]);
                let coarse = braid_blocks(n, self.flats[gi as usize]);
                let mut counts = vec![0usize; coarse.len()];
                for block in &fine {
                    let rep = block[0];
                    let owner = coarse.iter().position(|c| c.contains(&rep)).unwrap();
                    counts[owner] += 1;
                }
                let nontrivial: Vec<usize> =
                    counts.into_iter().filter(|&k| k > 1).collect();
                match nontrivial.as_slice() {
                    [] => Some(Family::Boolean { n: 0 }),
                    [k] => Some(Family::Braid { n: *k }),
                    _ => None, // a product of partition lattices
                }
            }
        }
    }

    /// The localization `M_F`, with lattice `[bottom, F]`.
    pub fn localization(&self, f: &Flat) -> Result<FlatLattice> {
        self.interval(&self.bottom(), f)
    }

    /// The restriction `M^F`, with lattice `[F, top]`.
    pub fn restriction(&self, f: &Flat) -> Result<FlatLattice> {
        self.interval(f, &self.top())
    }

    /// The lattice of the direct sum: the product of the two posets with
    /// additive rank.
    pub fn direct_sum(&self, other: &FlatLattice) -> Result<FlatLattice> {
        self.direct_sum_with_cap(other, DEFAULT_FLAT_CAP)
    }

    pub fn direct_sum_with_cap(&self, other: &FlatLattice, cap: usize) -> Result<FlatLattice> {
        let ground = self.ground_size + other.ground_size;
        if ground > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(ground));
        }
        let count = self.flats.len() * other.flats.len();
        if count > cap {
            return Err(Error::TooLarge {
                cap,
                detail: format!("direct sum would have {count} flats"),
            });
        }
        let shift = self.ground_size;
        let mut parts = Vec::with_capacity(count);
        for (i, &a) in self.flats.iter().enumerate() {
            for (j, &b) in other.flats.iter().enumerate() {
                parts.push((a | b << shift, self.ranks[i] + other.ranks[j]));
            }
        }
        let family = match (self.family, other.family) {
            (Some(Family::Boolean { n: a }), Some(Family::Boolean { n: b })) => {
                Some(Family::Boolean { n: a + b })
            }
            _ => None,
        };
        Ok(FlatLattice::from_parts(ground, parts, family))
    }

    /// Doubly indexed Whitney numbers `w_{i,j}` (first kind: Möbius sums)
    /// and `W_{i,j}` (second kind: comparable-pair counts).
    pub fn whitney(&self, kind: WhitneyKind, i: usize, j: usize) -> Result<BigInt> {
        if i > self.rank() || j > self.rank() {
            return Err(Error::RankOutOfRange);
        }
        Ok(self.whitney_unchecked(kind, i as i64, j as i64))
    }

    /// Whitney numbers with the out-of-range convention `w_{i,j} = 0`; used
    /// by the closed coefficient formulas where indices like `d - 5` may be
    /// negative.
    pub(crate) fn whitney_unchecked(&self, kind: WhitneyKind, i: i64, j: i64) -> BigInt {
        if i < 0 || j < 0 || i > self.rank() as i64 || j > self.rank() as i64 {
            return BigInt::zero();
        }
        let (i, j) = (i as u32, j as u32);
        let mut total = BigInt::zero();
        for e in 0..self.flats.len() as u32 {
            if self.ranks[e as usize] != i {
                continue;
            }
            match kind {
                WhitneyKind::Second => {
                    for f in 0..self.flats.len() as u32 {
                        if self.ranks[f as usize] == j && self.leq_ids(e, f) {
                            total += 1;
                        }
                    }
                }
                WhitneyKind::First => {
                    let row = self.mobius_row(e);
                    for f in 0..self.flats.len() as u32 {
                        if self.ranks[f as usize] == j {
                            total += &row[f as usize];
                        }
                    }
                }
            }
        }
        total
    }

    /// True iff `rk F + rk G = rk(F v G) + rk(F ^ G)` for every pair.
    pub fn is_modular(&self) -> bool {
        let n = self.flats.len() as u32;
        for a in 0..n {
            for b in a + 1..n {
                let meet = self.flats[a as usize] & self.flats[b as usize];
                let meet_rank = self.ranks[self.index[&meet] as usize];
                let join_rank = self.ranks[self.join_ids(a, b) as usize];
                if self.ranks[a as usize] + self.ranks[b as usize] != meet_rank + join_rank {
                    return false;
                }
            }
        }
        true
    }

    /// Full geometric-lattice validation, used for explicit flat lists.
    pub(crate) fn validate_geometric(&self) -> Result<()> {
        let flats = &self.flats;
        let n = flats.len();
        if n == 0 {
            return Err(Error::InvalidLattice("no flats given".into()));
        }
        // unique bottom, and it must be the empty set (looplessness)
        if self.ranks[0] != 0 {
            return Err(Error::InvalidLattice("no flat of rank 0".into()));
        }
        if n > 1 && self.ranks[1] == 0 {
            return Err(Error::InvalidLattice("two flats of rank 0".into()));
        }
        if flats[0] != 0 {
            let loop_elem = flats[0].trailing_zeros() as usize;
            return Err(Error::LoopsPresent(loop_elem));
        }
        // top must contain the whole ground set and be the unique maximum
        let full: Bits = if self.ground_size == MAX_GROUND {
            !0
        } else {
            (1 << self.ground_size) - 1
        };
        if *flats.last().unwrap() != full {
            return Err(Error::InvalidLattice(
                "the top flat must contain every element".into(),
            ));
        }
        // order must respect rank strictly
        for a in 0..n {
            for b in 0..n {
                if a != b && flats[a] & !flats[b] == 0 && self.ranks[a] >= self.ranks[b] {
                    return Err(Error::InvalidLattice(format!(
                        "flat {} is contained in {} but has rank {} >= {}",
                        Flat(flats[a]),
                        Flat(flats[b]),
                        self.ranks[a],
                        self.ranks[b]
                    )));
                }
            }
        }
        // closed under intersection
        for a in 0..n {
            for b in a + 1..n {
                let m = flats[a] & flats[b];
                if !self.index.contains_key(&m) {
                    return Err(Error::InvalidLattice(format!(
                        "intersection {} of two flats is not a flat",
                        Flat(m)
                    )));
                }
            }
        }
        // graded: covers go up by exactly one rank
        for a in 0..n {
            for b in 0..n {
                if a == b || flats[a] & !flats[b] != 0 || self.ranks[b] == self.ranks[a] + 1 {
                    continue;
                }
                if self.ranks[b] <= self.ranks[a] {
                    continue;
                }
                let covered = (0..n).any(|c| {
                    c != a
                        && c != b
                        && flats[a] & !flats[c] == 0
                        && flats[c] & !flats[b] == 0
                });
                if !covered {
                    return Err(Error::InvalidLattice(format!(
                        "{} covers {} but ranks differ by more than one",
                        Flat(flats[b]),
                        Flat(flats[a])
                    )));
                }
            }
        }
        // every element closes to a rank-1 flat
        for e in 0..self.ground_size {
            let closure = flats
                .iter()
                .zip(&self.ranks)
                .filter(|(f, _)| *f >> e & 1 == 1)
                .map(|(_, &r)| r)
                .min();
            match closure {
                Some(1) => {}
                Some(0) | None => return Err(Error::LoopsPresent(e)),
                Some(_) => {
                    return Err(Error::InvalidLattice(format!(
                        "element {e} is not contained in any rank-1 flat"
                    )))
                }
            }
        }
        // atomistic: every flat is the join of the atoms below it
        for a in 0..n {
            if self.ranks[a] == 0 {
                continue;
            }
            let mut union: Bits = 0;
            for b in 0..n {
                if self.ranks[b] == 1 && flats[b] & !flats[a] == 0 {
                    union |= flats[b];
                }
            }
            let join = flats
                .iter()
                .position(|&f| union & !f == 0)
                .expect("top contains every union");
            if flats[join] != flats[a] {
                return Err(Error::InvalidLattice(format!(
                    "flat {} is not a join of rank-1 flats",
                    Flat(flats[a])
                )));
            }
        }
        // semimodular
        for a in 0..n as u32 {
            for b in a + 1..n as u32 {
                let meet = flats[a as usize] & flats[b as usize];
                let meet_rank = self.ranks[self.index[&meet] as usize];
                let join_rank = self.ranks[self.join_ids(a, b) as usize];
                if self.ranks[a as usize] + self.ranks[b as usize] < meet_rank + join_rank {
                    return Err(Error::InvalidLattice(format!(
                        "rank submodularity fails for {} and {}",
                        Flat(flats[a as usize]),
                        Flat(flats[b as usize])
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Blocks of the partition of `[n]` encoded by a braid flat (an edge set of
/// the complete graph). Singleton blocks are included.
pub(crate) fn braid_blocks(n: usize, bits: Bits) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits >> idx & 1 == 1 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
            idx += 1;
        }
    }
    let mut blocks: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        blocks.entry(root).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = blocks.into_values().collect();
    for b in &mut out {
        b.sort_unstable();
    }
    out.sort();
    out
}

/// The flat of the braid matroid `M_n` corresponding to a partition of the
/// vertex set `{0, ..., n-1}` given as blocks; the flat is the set of edges
/// of `K_n` inside the blocks.
pub fn braid_flat_from_blocks(n: usize, blocks: &[Vec<usize>]) -> Flat {
    Flat(partition_to_edge_bits(n, blocks))
}

/// Blocks (including singletons, each sorted, ordered by minimum) of the
/// vertex partition encoded by a braid flat.
pub fn braid_blocks_of_flat(n: usize, f: &Flat) -> Vec<Vec<usize>> {
    braid_blocks(n, f.bits())
}

/// Index of the edge `(i, j)`, `i < j`, in the fixed edge order of `K_n`.
pub(crate) fn edge_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // edges (0,1), (0,2), ..., (0,n-1), (1,2), ...
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Edge set of the complete graph within each block of a partition.
pub(crate) fn partition_to_edge_bits(n: usize, blocks: &[Vec<usize>]) -> Bits {
    let mut bits: Bits = 0;
    for block in blocks {
        for (a, &i) in block.iter().enumerate() {
            for &j in &block[a + 1..] {
                bits |= 1 << edge_index(n, i.min(j), i.max(j));
            }
        }
    }
    bits
}

//! The q-deformed Möbius algebra `E_q(M)` and its Kazhdan-Lusztig basis.
//!
//! `E_q(M)` is free over `Z[q, q^-1]` on the flats, with
//!
//! `e_F * e_G = sum_{H >= I >= F v G} mu(I, H) q^crk(I) e_H`.
//!
//! Setting `q = 1` recovers the classical join product. The Kazhdan-Lusztig
//! basis is
//!
//! `x_F = sum_{G >= F} q^(rk G - rk F) P_[F,G](q^-2) e_G`,
//!
//! a unitriangular change of basis; the structure constants `C_FG^H(q)` of
//! multiplication in it are what the positivity scan inspects.
//!
//! Products come in two independently coded routes: the defining double sum
//! (`eps_product`, `multiply_direct`) and a fast route through the zeta
//! transform, where multiplication is pointwise with a `q^crk` twist
//! (`multiply`, `kl_product`). The test suite checks the two routes against
//! each other.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::families::{braid_kl, uniform_kl};
use crate::kl;
use crate::laurent::LaurentPoly;
use crate::matroid::{braid_blocks_of_flat, Family, Flat, FlatLattice};
use crate::poly::IntPoly;

/// An element of `E_q(M)`: a finitely supported map from flats to Laurent
/// polynomials. Keys are flat ids of the owning lattice, in `(rank, bitset)`
/// order; zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<u32, LaurentPoly>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn basis(id: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(id, LaurentPoly::one());
        AlgebraElement { terms }
    }

    pub fn terms(&self) -> &BTreeMap<u32, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, id: u32) -> LaurentPoly {
        self.terms.get(&id).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled_term(&mut self, id: u32, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(id).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&id);
        }
    }

    pub fn add_scaled(&mut self, c: &LaurentPoly, other: &AlgebraElement) {
        for (&id, v) in &other.terms {
            self.add_scaled_term(id, &(c * v));
        }
    }
}

/// A structure constant with a negative coefficient or a negative
/// `q`-exponent, as reported by the positivity scan.
#[derive(Clone, Debug)]
pub struct PositivityViolation {
    pub f: Flat,
    pub g: Flat,
    pub h: Flat,
    pub coefficient: LaurentPoly,
}

/// A Kazhdan-Lusztig basis element in the standard basis: ascending
/// `(flat id, coefficient)` pairs starting with the base flat.
type XRow = Arc<Vec<(u32, LaurentPoly)>>;

/// The algebra `E_q(M)` over a fixed lattice, with the per-lattice caches
/// for interval Kazhdan-Lusztig polynomials, basis rows, and `eps` products.
/// All caches are write-once: concurrent users compute identical values.
pub struct Algebra<'a> {
    lat: &'a FlatLattice,
    interval_kl: Mutex<HashMap<(u32, u32), IntPoly>>,
    x_rows: Mutex<HashMap<u32, XRow>>,
    eps_table: Mutex<HashMap<(u32, u32), Arc<AlgebraElement>>>,
}

impl<'a> Algebra<'a> {
    pub fn new(lat: &'a FlatLattice) -> Self {
        Algebra {
            lat,
            interval_kl: Mutex::new(HashMap::new()),
            x_rows: Mutex::new(HashMap::new()),
            eps_table: Mutex::new(HashMap::new()),
        }
    }

    pub fn lattice(&self) -> &FlatLattice {
        self.lat
    }

    pub fn flat_of(&self, id: u32) -> Flat {
        self.lat.flat_by_id(id)
    }

    pub fn flat_id(&self, f: &Flat) -> Result<u32> {
        self.lat.id(f)
    }

    fn crk(&self, id: u32) -> i64 {
        self.lat.rank() as i64 - self.lat.rank_by_id(id) as i64
    }

    /// `e_F * e_G` by the defining sum over pairs `H >= I >= F v G`.
    pub fn eps_product(&self, f: &Flat, g: &Flat) -> Result<AlgebraElement> {
        let (fi, gi) = (self.lat.id(f)?, self.lat.id(g)?);
        Ok((*self.eps_product_ids(fi, gi)).clone())
    }

    pub(crate) fn eps_product_ids(&self, a: u32, b: u32) -> Arc<AlgebraElement> {
        let key = (a.min(b), a.max(b));
        if let Some(hit) = self.eps_table.lock().unwrap().get(&key) {
            return Arc::clone(hit);
        }
        let join = self.lat.join_ids(a, b);
        let mut out = AlgebraElement::zero();
        for i in self.lat.upset_ids(join) {
            let q_crk = LaurentPoly::monomial(BigInt::one(), self.crk(i));
            for h in self.lat.upset_ids(i) {
                let mu = self.lat.mobius_ids(i, h);
                out.add_scaled_term(h, &(&LaurentPoly::monomial(mu, 0) * &q_crk));
            }
        }
        let out = Arc::new(out);
        self.eps_table
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&out))
            .clone()
    }

    /// The two-sided identity `sum_{F <= G} mu(F, G) q^(-crk F) e_G`.
    pub fn unit(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for f in 0..self.lat.flat_count() as u32 {
            let shift = -self.crk(f);
            for g in self.lat.upset_ids(f) {
                let mu = self.lat.mobius_ids(f, g);
                out.add_scaled_term(g, &LaurentPoly::monomial(mu, shift));
            }
        }
        out
    }

    /// Bilinear extension of `eps_product`: the defining-sum route.
    pub fn multiply_direct(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (&fa, ca) in a.terms() {
            for (&fb, cb) in b.terms() {
                let prod = self.eps_product_ids(fa, fb);
                out.add_scaled(&(ca * cb), &prod);
            }
        }
        out
    }

    /// Zeta transform: `zhat[J] = sum_{F <= J} a_F`.
    fn zeta(&self, a: &AlgebraElement) -> Vec<LaurentPoly> {
        let mut z = vec![LaurentPoly::zero(); self.lat.flat_count()];
        for (&f, c) in a.terms() {
            for j in self.lat.upset_ids(f) {
                z[j as usize] += c;
            }
        }
        z
    }

    /// Fast product: pointwise in zeta coordinates with the `q^crk` twist,
    /// then Möbius inversion. Agrees with `multiply_direct`.
    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let za = self.zeta(a);
        let zb = self.zeta(b);
        let mut out = AlgebraElement::zero();
        for j in 0..self.lat.flat_count() as u32 {
            let (x, y) = (&za[j as usize], &zb[j as usize]);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let v = &(x * y) * &LaurentPoly::monomial(BigInt::one(), self.crk(j));
            for h in self.lat.upset_ids(j) {
                let mu = self.lat.mobius_ids(j, h);
                out.add_scaled_term(h, &(&v * &LaurentPoly::monomial(mu, 0)));
            }
        }
        out
    }

    /// Values of an element at `q = 1`. In the classical Möbius algebra the
    /// product collapses to `e_F e_G = e_{F v G}`.
    pub fn specialize_q1(&self, a: &AlgebraElement) -> BTreeMap<u32, BigInt> {
        a.terms()
            .iter()
            .map(|(&id, c)| (id, c.eval_at_one()))
            .filter(|(_, v)| *v != BigInt::from(0))
            .collect()
    }

    /// The Kazhdan-Lusztig polynomial of the minor with lattice `[F, G]`.
    ///
    /// Boolean, uniform and braid lattices are recognized by type and routed
    /// to the family recursions; anything else relabels the interval and
    /// runs the generic engine. Memoized per `(F, G)`.
    pub fn interval_kl(&self, f: &Flat, g: &Flat) -> Result<IntPoly> {
        let (fi, gi) = (self.lat.id(f)?, self.lat.id(g)?);
        if !self.lat.leq_ids(fi, gi) {
            return Err(Error::NotComparable);
        }
        Ok(self.interval_kl_ids(fi, gi))
    }

    fn interval_kl_ids(&self, fi: u32, gi: u32) -> IntPoly {
        if let Some(hit) = self.interval_kl.lock().unwrap().get(&(fi, gi)) {
            return hit.clone();
        }
        let top = (self.lat.flat_count() - 1) as u32;
        let p = match self.lat.family() {
            Some(Family::Boolean { .. }) => IntPoly::one(),
            Some(Family::Uniform { m, d }) => {
                if gi == top {
                    uniform_kl(m, d - self.lat.rank_by_id(fi) as usize)
                } else {
                    IntPoly::one() // proper flats of a uniform matroid span Boolean intervals
                }
            }
            Some(Family::Braid { n }) => self.braid_interval_kl(n, fi, gi),
            None => self.generic_interval_kl(fi, gi),
        };
        self.interval_kl
            .lock()
            .unwrap()
            .entry((fi, gi))
            .or_insert_with(|| p.clone());
        p
    }

    fn braid_interval_kl(&self, n: usize, fi: u32, gi: u32) -> IntPoly {
        let fine = braid_blocks_of_flat(n, &self.lat.flat_by_id(fi));
        let coarse = braid_blocks_of_flat(n, &self.lat.flat_by_id(gi));
        // [F, G] is a product of partition lattices, one per block of G
        let mut p = IntPoly::one();
        for block in &coarse {
            let inner = fine.iter().filter(|b| block.contains(&b[0])).count();
            if inner > 1 {
                p = &p * &braid_kl(inner);
            }
        }
        p
    }

    fn generic_interval_kl(&self, fi: u32, gi: u32) -> IntPoly {
        let interval = self
            .lat
            .interval(&self.lat.flat_by_id(fi), &self.lat.flat_by_id(gi))
            .expect("interval flats validated");
        kl::kl_poly(&interval)
            .expect("interval recursion must be antisymmetric")
            .poly
    }

    /// Expansion of `x_F` in the standard basis, as `(flat id, coefficient)`
    /// pairs in ascending id order starting with `(F, 1)`.
    fn x_row(&self, fi: u32) -> XRow {
        if let Some(hit) = self.x_rows.lock().unwrap().get(&fi) {
            return Arc::clone(hit);
        }
        let rank_f = self.lat.rank_by_id(fi) as i64;
        let row: Vec<(u32, LaurentPoly)> = self
            .lat
            .upset_ids(fi)
            .into_iter()
            .map(|g| {
                let p = self.interval_kl_ids(fi, g);
                let shift = self.lat.rank_by_id(g) as i64 - rank_f;
                let c = LaurentPoly::poly_at_q_inv_sq(&p, shift);
                // deg P < (rk G - rk F)/2 keeps all exponents non-negative
                assert!(
                    c.min_exp().unwrap_or(0) >= i64::from(g != fi),
                    "x row exponent bound violated at {}",
                    self.lat.flat_by_id(g)
                );
                (g, c)
            })
            .collect();
        let row = Arc::new(row);
        self.x_rows
            .lock()
            .unwrap()
            .entry(fi)
            .or_insert_with(|| Arc::clone(&row))
            .clone()
    }

    /// The Kazhdan-Lusztig basis element
    /// `x_F = sum_{G >= F} q^(rk G - rk F) P_[F,G](q^-2) e_G`.
    pub fn kl_basis_element(&self, f: &Flat) -> Result<AlgebraElement> {
        let fi = self.lat.id(f)?;
        let mut out = AlgebraElement::zero();
        for (g, c) in self.x_row(fi).iter() {
            out.add_scaled_term(*g, c);
        }
        Ok(out)
    }

    /// Coefficients `c_F` with `a = sum c_F x_F`, by unitriangular
    /// elimination in the `(rank, bitset)` flat order.
    pub fn expand_in_kl_basis(&self, a: &AlgebraElement) -> BTreeMap<u32, LaurentPoly> {
        let mut cur: BTreeMap<u32, LaurentPoly> = a.terms().clone();
        let mut out = BTreeMap::new();
        while let Some((&h, _)) = cur.iter().next() {
            let c = cur.remove(&h).unwrap();
            if c.is_zero() {
                continue;
            }
            for (g, xc) in self.x_row(h).iter().skip(1) {
                let entry = cur.entry(*g).or_default();
                *entry -= &(&c * xc);
                if entry.is_zero() {
                    cur.remove(g);
                }
            }
            out.insert(h, c);
        }
        out
    }

    /// `x_F * x_G` expanded in the Kazhdan-Lusztig basis: the map
    /// `H -> C_FG^H(q)` over its support.
    pub fn kl_product(&self, f: &Flat, g: &Flat) -> Result<BTreeMap<u32, LaurentPoly>> {
        let (fi, gi) = (self.lat.id(f)?, self.lat.id(g)?);
        Ok(self.kl_product_ids(fi, gi))
    }

    fn kl_product_ids(&self, fi: u32, gi: u32) -> BTreeMap<u32, LaurentPoly> {
        let base = self.lat.join_ids(fi, gi);
        let ups = self.lat.upset_ids(base);
        let pos: HashMap<u32, usize> = ups.iter().enumerate().map(|(p, &j)| (j, p)).collect();
        // zeta transforms of the two rows, restricted to the upset of F v G
        let zeta_row = |row: &[(u32, LaurentPoly)]| -> Vec<LaurentPoly> {
            let mut z = vec![LaurentPoly::zero(); ups.len()];
            for &(e, ref c) in row {
                for (p, &j) in ups.iter().enumerate() {
                    if self.lat.leq_ids(e, j) {
                        z[p] += c;
                    }
                }
            }
            z
        };
        let za = zeta_row(&self.x_row(fi));
        let zb = zeta_row(&self.x_row(gi));
        // pointwise product with the q^crk twist, then Möbius inversion
        let mut eps = vec![LaurentPoly::zero(); ups.len()];
        for (p, &j) in ups.iter().enumerate() {
            if za[p].is_zero() || zb[p].is_zero() {
                continue;
            }
            let v = &(&za[p] * &zb[p]) * &LaurentPoly::monomial(BigInt::one(), self.crk(j));
            for (ph, &h) in ups.iter().enumerate().skip(p) {
                if self.lat.leq_ids(j, h) {
                    let mu = self.lat.mobius_ids(j, h);
                    eps[ph] += &(&v * &LaurentPoly::monomial(mu, 0));
                }
            }
        }
        // unitriangular elimination against the x rows
        let mut out = BTreeMap::new();
        for p in 0..ups.len() {
            if eps[p].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut eps[p]);
            for (g, xc) in self.x_row(ups[p]).iter().skip(1) {
                eps[pos[g]] -= &(&c * xc);
            }
            out.insert(ups[p], c);
        }
        out
    }

    /// The structure constant `C_FG^H(q)` of `x_F x_G = sum_H C_FG^H x_H`.
    pub fn structure_constant(&self, f: &Flat, g: &Flat, h: &Flat) -> Result<LaurentPoly> {
        let hi = self.lat.id(h)?;
        Ok(self
            .kl_product(f, g)?
            .remove(&hi)
            .unwrap_or_default())
    }

    /// Scans every pair `(F, G)` with `F <= G` in the flat order and lists
    /// the structure constants with a negative coefficient or a negative
    /// `q`-exponent. An empty result means the positivity conjecture holds
    /// for this matroid.
    pub fn positivity_scan(&self) -> Vec<PositivityViolation> {
        let mut findings = Vec::new();
        let n = self.lat.flat_count() as u32;
        for fi in 0..n {
            for gi in fi..n {
                for (h, c) in self.kl_product_ids(fi, gi) {
                    if c.has_negative_coeff() || c.min_exp().is_some_and(|e| e < 0) {
                        findings.push(PositivityViolation {
                            f: self.lat.flat_by_id(fi),
                            g: self.lat.flat_by_id(gi),
                            h: self.lat.flat_by_id(h),
                            coefficient: c,
                        });
                    }
                }
            }
        }
        findings
    }
}

/// Closed-form product in the Kazhdan-Lusztig basis of the Boolean matroid
/// on `[n]`:
///
/// `x_F x_G = sum_{K >= F u G} q^(n - |K|) (1 + q)^(|K| - |F n G|) x_K`.
pub fn boolean_product_closed(n: usize, f: &Flat, g: &Flat) -> BTreeMap<Flat, LaurentPoly> {
    assert!(n <= crate::matroid::MAX_GROUND);
    let full: u128 = if n == 0 { 0 } else { (1 << n) - 1 };
    assert_eq!(f.bits() & !full, 0, "flat outside the ground set");
    assert_eq!(g.bits() & !full, 0, "flat outside the ground set");
    let union = f.bits() | g.bits();
    let inter_len = (f.bits() & g.bits()).count_ones() as i64;
    let one_plus_q = LaurentPoly::new(0, vec![BigInt::one(), BigInt::one()]);
    let mut out = BTreeMap::new();
    // enumerate supersets of the union by walking submasks of its complement
    let free = full & !union;
    let mut sub = 0u128;
    loop {
        let k = union | sub;
        let klen = k.count_ones() as i64;
        let mut c = LaurentPoly::monomial(BigInt::one(), n as i64 - klen);
        for _ in 0..(klen - inter_len) {
            c = &c * &one_plus_q;
        }
        out.insert(Flat::from_bits(k), c);
        if sub == free {
            break;
        }
        sub = (sub.wrapping_sub(free)) & free;
    }
    out
}

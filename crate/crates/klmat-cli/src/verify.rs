//! The `kl verify` suites: named batteries of exact cross-checks with one
//! line per check on stderr.

use num_bigint::BigInt;
use num_traits::One;

use klmat::algebra::{boolean_product_closed, Algebra, AlgebraElement};
use klmat::families::{
    braid_cubic, braid_kl, gf_check_braid, gf_check_uniform, uniform_coeff_closed, uniform_kl,
};
use klmat::golden;
use klmat::kl::{cancellation_check, check_defining_identity, kl_coeff_closed, kl_poly};
use klmat::matroid::{Flat, FlatLattice, MatroidSpec};
use klmat::IntPoly;

use crate::CliError;

struct Checker {
    failures: usize,
    total: usize,
}

impl Checker {
    fn new() -> Self {
        Checker {
            failures: 0,
            total: 0,
        }
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.total += 1;
        if ok {
            eprintln!("ok: {name}");
        } else {
            self.failures += 1;
            eprintln!("FAIL: {name}");
        }
    }

    fn finish(self, suite: &str) -> Result<(), CliError> {
        eprintln!(
            "{suite}: {}/{} checks passed",
            self.total - self.failures,
            self.total
        );
        if self.failures > 0 {
            Err(CliError::VerifyFailed(self.failures))
        } else {
            Ok(())
        }
    }
}

pub fn cmd_verify(suite: &str, order: usize) -> Result<(), CliError> {
    match suite {
        "identities" => identities(),
        "gf" => gf(order),
        "coefficients" => coefficients(),
        "tables" => tables(),
        "algebra" => algebra(),
        other => Err(CliError::Usage(format!(
            "unknown suite `{other}` (identities, gf, coefficients, tables, algebra)"
        ))),
    }
}

fn corpus() -> Vec<(String, FlatLattice)> {
    let mut out = Vec::new();
    for spec_str in [
        "boolean:1",
        "boolean:3",
        "boolean:4",
        "uniform:1,2",
        "uniform:1,3",
        "uniform:2,2",
        "uniform:2,3",
        "uniform:3,3",
        "uniform:1,5",
        "braid:3",
        "braid:4",
        "braid:5",
    ] {
        let lat = MatroidSpec::parse(spec_str).unwrap().build().unwrap();
        out.push((spec_str.to_string(), lat));
    }
    // two fixed representable matroids beyond the families
    let fano = MatroidSpec::Matrix {
        p: 2,
        rows: 3,
        cols: 7,
        entries: vec![
            0, 0, 0, 1, 1, 1, 1, //
            0, 1, 1, 0, 0, 1, 1, //
            1, 0, 1, 0, 1, 0, 1,
        ],
    };
    out.push(("fano".to_string(), fano.build().unwrap()));
    let grid = MatroidSpec::Matrix {
        p: 3,
        rows: 3,
        cols: 6,
        entries: vec![
            1, 0, 0, 1, 1, 0, //
            0, 1, 0, 1, 0, 1, //
            0, 0, 1, 0, 1, 1,
        ],
    };
    out.push(("gf3 hexagon".to_string(), grid.build().unwrap()));
    out
}

fn identities() -> Result<(), CliError> {
    let mut c = Checker::new();
    for (name, lat) in corpus() {
        let p = kl_poly(&lat).map_err(CliError::from)?.poly;
        c.check(&format!("{name}: constant term 1"), p.coeff(0).is_one());
        if lat.rank() > 0 {
            c.check(
                &format!("{name}: degree bound"),
                p.degree().unwrap_or(0) * 2 < lat.rank(),
            );
            c.check(
                &format!("{name}: cancellation identity"),
                cancellation_check(&lat).map_err(CliError::from)?,
            );
        }
        c.check(
            &format!("{name}: defining identity"),
            check_defining_identity(&lat, &p).map_err(CliError::from)?,
        );
        c.check(
            &format!("{name}: P = 1 iff modular"),
            p.is_one() == lat.is_modular(),
        );
    }
    // multiplicativity over a couple of direct sums
    let pairs = [("uniform:1,2", "braid:4"), ("boolean:2", "uniform:1,3")];
    for (a, b) in pairs {
        let la = MatroidSpec::parse(a).unwrap().build().unwrap();
        let lb = MatroidSpec::parse(b).unwrap().build().unwrap();
        let sum = la.direct_sum(&lb).map_err(CliError::from)?;
        let expected = &kl_poly(&la).unwrap().poly * &kl_poly(&lb).unwrap().poly;
        c.check(
            &format!("{a} (+) {b}: multiplicative"),
            kl_poly(&sum).unwrap().poly == expected,
        );
    }
    c.finish("identities")
}

fn gf(order: usize) -> Result<(), CliError> {
    if order == 0 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    let mut c = Checker::new();
    for m in 0..=3 {
        c.check(
            &format!("uniform gf identity, m={m}, order {order}"),
            gf_check_uniform(m, order),
        );
    }
    c.check(
        &format!("braid gf identity, order {order}"),
        gf_check_braid(order),
    );
    c.finish("gf")
}

fn coefficients() -> Result<(), CliError> {
    let mut c = Checker::new();
    for m in 1..=3usize {
        for &(d, _) in golden::uniform_table(m).unwrap() {
            let p = uniform_kl(m, d);
            let ok = (0..=3).all(|i| uniform_coeff_closed(m, d, i).unwrap() == p.coeff(i));
            c.check(&format!("uniform:{m},{d} closed coefficients"), ok);
        }
    }
    for &(n, _) in golden::BRAID {
        c.check(
            &format!("braid:{n} cubic coefficient"),
            braid_cubic(n) == braid_kl(n).coeff(3),
        );
    }
    for (name, lat) in corpus() {
        let p = kl_poly(&lat).map_err(CliError::from)?.poly;
        let ok = (0..=3).all(|i| kl_coeff_closed(&lat, i).unwrap() == p.coeff(i));
        c.check(&format!("{name} lattice closed coefficients"), ok);
    }
    c.finish("coefficients")
}

fn tables() -> Result<(), CliError> {
    let mut c = Checker::new();
    for m in 1..=3usize {
        for &(d, coeffs) in golden::uniform_table(m).unwrap() {
            let expected =
                IntPoly::from_coeffs(coeffs.iter().map(|&x| BigInt::from(x)).collect());
            c.check(&format!("uniform:{m},{d} table cell"), uniform_kl(m, d) == expected);
        }
    }
    for &(n, coeffs) in golden::BRAID {
        let expected = IntPoly::from_coeffs(coeffs.iter().map(|&x| BigInt::from(x)).collect());
        c.check(&format!("braid:{n} table cell"), braid_kl(n) == expected);
    }
    c.finish("tables")
}

fn algebra() -> Result<(), CliError> {
    let mut c = Checker::new();
    // axioms on every lattice of the corpus with at most 16 flats
    for (name, lat) in corpus() {
        if lat.flat_count() > 16 {
            continue;
        }
        let alg = Algebra::new(&lat);
        let unit = alg.unit();
        let n = lat.flat_count() as u32;
        let mut ok_unit = true;
        let mut ok_comm = true;
        let mut ok_assoc = true;
        for a in 0..n {
            let ea = AlgebraElement::basis(a);
            ok_unit &= alg.multiply_direct(&unit, &ea) == ea;
            for b in a..n {
                let eb = AlgebraElement::basis(b);
                let ab = alg.multiply_direct(&ea, &eb);
                ok_comm &= ab == alg.multiply_direct(&eb, &ea);
                for cc in b..n {
                    let ec = AlgebraElement::basis(cc);
                    ok_assoc &= alg.multiply_direct(&ab, &ec)
                        == alg.multiply_direct(&ea, &alg.multiply_direct(&eb, &ec));
                }
            }
        }
        c.check(&format!("{name}: unit law"), ok_unit);
        c.check(&format!("{name}: commutativity"), ok_comm);
        c.check(&format!("{name}: associativity"), ok_assoc);
    }
    // closed Boolean products
    for n in 0..=4usize {
        let lat = MatroidSpec::Boolean { n }.build().unwrap();
        let alg = Algebra::new(&lat);
        let flats: Vec<Flat> = lat.flats().collect();
        let mut ok = true;
        for f in &flats {
            for g in &flats {
                let computed: std::collections::BTreeMap<Flat, _> = alg
                    .kl_product(f, g)
                    .unwrap()
                    .into_iter()
                    .map(|(id, coeff)| (alg.flat_of(id), coeff))
                    .collect();
                ok &= computed == boolean_product_closed(n, f, g);
            }
        }
        c.check(&format!("boolean:{n}: closed-form products"), ok);
    }
    // positivity landscape
    for spec_str in ["boolean:4", "braid:4", "braid:5"] {
        let lat = MatroidSpec::parse(spec_str).unwrap().build().unwrap();
        c.check(
            &format!("{spec_str}: positivity scan clean"),
            Algebra::new(&lat).positivity_scan().is_empty(),
        );
    }
    let lat = MatroidSpec::Uniform { m: 2, d: 4 }.build().unwrap();
    c.check(
        "uniform:2,4: positivity counterexample found",
        !Algebra::new(&lat).positivity_scan().is_empty(),
    );
    c.finish("algebra")
}

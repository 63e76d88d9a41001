//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any of them fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singspace::dynamic::AnyIdeal;
use singspace::field::{Field, FieldSpec, PrimeField, Rationals};
use singspace::invariants::{self, HilbertPolynomial, Window};
use singspace::linalg::{kernel_basis, rank, rref, Matrix, Subspace};
use singspace::poly::{monomials_of_degree, Ideal, Monomial, Polynomial};
use singspace::slices::GradedIdeal;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn plane(gen: &str) -> GradedIdeal<PrimeField> {
    GradedIdeal::new(Ideal::parse(PrimeField::default(), &["x", "y", "z"], &[gen]).unwrap())
}

fn twisted_cubic() -> GradedIdeal<PrimeField> {
    GradedIdeal::new(
        Ideal::parse(
            PrimeField::default(),
            &["x0", "x1", "x2", "x3"],
            &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"],
        )
        .unwrap(),
    )
}

const NODAL: &str = "y^2*z - x^3 - x^2*z";

fn criterion_1() -> Outcome {
    let g = plane(NODAL);
    let inv =
        invariants::curve_invariants(&g, Window::new(1, 14).unwrap()).map_err(|e| e.to_string())?;
    ensure(inv.d == 3 && inv.p_a == 1, || {
        format!("d = {}, p_a = {}", inv.d, inv.p_a)
    })?;
    for l in 6..=14u32 {
        let w = g.singular_slice(l).map_err(|e| e.to_string())?;
        let codim = w.codim() as i64;
        let li = i64::from(l);
        ensure(codim == 6 * li - 9, || {
            format!("l = {l}: codim W = {codim}, want {}", 6 * li - 9)
        })?;
        let formula = invariants::codim_formula(2, 3, 1, 1, li);
        ensure(codim == formula, || {
            format!("l = {l}: codim W = {codim}, formula {formula}")
        })?;
        let sq = g.ideal_square_slice(l);
        ensure(w.dim() == sq.dim(), || {
            format!("l = {l}: dim W = {}, dim I^2 = {}", w.dim(), sq.dim())
        })?;
        let omega = g.omega_slice_dim(l).map_err(|e| e.to_string())? as i64;
        ensure(omega == 3 * li, || {
            format!("l = {l}: omega = {omega}, want {}", 3 * li)
        })?;
    }
    Ok("d = 3, p_a = 1; codim W = 6l - 9, W = I^2, omega = 3l on l = 6..14".into())
}

fn criterion_2() -> Outcome {
    let cases: [(&str, &str, [i64; 2]); 4] = [
        ("smooth conic", "x*z - y^2", [-1, 2]),
        ("nodal cubic", NODAL, [0, 3]),
        ("cuspidal cubic", "y^2*z - x^3", [0, 3]),
        ("smooth quartic", "x^4 + y^4 + z^4", [2, 4]),
    ];
    let mut seen = Vec::new();
    for (name, gen, expected) in cases {
        let g = plane(gen);
        let window = Window::default_for(g.ideal());
        let inv = invariants::curve_invariants(&g, window).map_err(|e| e.to_string())?;
        let omega = invariants::omega_record(&g, window).map_err(|e| e.to_string())?;
        let want = HilbertPolynomial::from_ints(&expected);
        ensure(*omega.polynomial() == want, || {
            format!("{name}: omega polynomial {}, want {want}", omega.polynomial)
        })?;
        let theorem = HilbertPolynomial::from_ints(&[inv.p_a - 1, inv.d]);
        ensure(want == theorem, || {
            format!("{name}: d l + p_a - 1 = {theorem}, want {want}")
        })?;
        seen.push(format!("{name} {want}"));
    }
    Ok(seen.join(", "))
}

fn criterion_3() -> Outcome {
    let g = twisted_cubic();
    let window = Window::new(1, 12).unwrap();
    let inv = invariants::curve_invariants(&g, window).map_err(|e| e.to_string())?;
    ensure(inv.d == 3 && inv.p_a == 0, || {
        format!("d = {}, p_a = {}", inv.d, inv.p_a)
    })?;
    let omega = invariants::omega_record(&g, window).map_err(|e| e.to_string())?;
    let want = HilbertPolynomial::from_ints(&[-1, 3]);
    ensure(*omega.polynomial() == want, || {
        format!("omega polynomial {}", omega.polynomial)
    })?;
    let gpm = invariants::g_plus_mu_from_record(&inv, &omega).map_err(|e| e.to_string())?;
    ensure(gpm == 0, || format!("g~ + mu = {gpm}"))?;
    for l in omega.stable_from..=12 {
        let w = g.singular_slice(l).map_err(|e| e.to_string())?;
        let li = i64::from(l);
        ensure(w.codim() as i64 == 9 * li - 7, || {
            format!("l = {l}: codim W = {}", w.codim())
        })?;
        let sq = g.ideal_square_slice(l);
        ensure(w.space == sq.space, || format!("l = {l}: W != I^2"))?;
    }
    Ok(format!(
        "d = 3, p_a = 0, omega {want}, codim W = 9l - 7 and W = I^2 on l = {}..12",
        omega.stable_from
    ))
}

/// A form of degree `d` in the first `k` of `nvars` variables with every
/// coefficient a random nonzero element.
fn dense_form(
    field: &PrimeField,
    nvars: usize,
    k: usize,
    d: u32,
    rng: &mut ChaCha8Rng,
) -> Polynomial<PrimeField> {
    let terms = monomials_of_degree(k, d).into_iter().map(|m| {
        let mut e = m.exponents().to_vec();
        e.resize(nvars, 0);
        (Monomial::new(e), rng.gen_range(1..field.modulus()))
    });
    Polynomial::from_terms(field, nvars, terms)
}

fn criterion_4() -> Outcome {
    let field = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut cells = 0;
    for n in 1..=4u32 {
        let nvars = n as usize + 1;
        for b in 0..n {
            for d in 1..=3u32 {
                let pure = Polynomial::from_int_terms(
                    &field,
                    nvars,
                    &[(1, &{
                        let mut e = vec![0; nvars];
                        e[0] = d;
                        e
                    })],
                );
                let dense = dense_form(&field, nvars, b as usize + 2, d, &mut rng);
                for l in 2 * d..=2 * d + 4 {
                    let closed =
                        invariants::beta_closed_form(n, b, d, l).map_err(|e| e.to_string())?;
                    for (label, f) in [("x0^d", &pure), ("dense", &dense)] {
                        let brute =
                            invariants::beta_bruteforce(n, b, f, l).map_err(|e| e.to_string())?;
                        ensure(brute as u128 == closed, || {
                            format!(
                                "n={n} b={b} d={d} l={l} f={label}: brute {brute}, closed {closed}"
                            )
                        })?;
                    }
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} cells, two forms each, zero mismatches"))
}

/// For a monomial ideal the singular space is spanned by monomials, so it can
/// be decided one monomial at a time.
fn criterion_5() -> Outcome {
    let gens: [[u32; 4]; 3] = [[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 1, 0]];
    let divides = |g: &[u32], m: &[u32]| g.iter().zip(m).all(|(a, b)| a <= b);
    let in_ideal = |m: &[u32]| gens.iter().any(|g| divides(g, m));
    let in_square = |m: &[u32]| {
        gens.iter().any(|a| {
            gens.iter().any(|b| {
                let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                divides(&prod, m)
            })
        })
    };
    let in_singular = |m: &[u32]| {
        (0..4).all(|j| {
            if m[j] == 0 {
                return true;
            }
            let mut q = m.to_vec();
            q[j] -= 1;
            in_ideal(&q)
        })
    };

    let field = PrimeField::default();
    let g = GradedIdeal::new(
        Ideal::parse(
            field,
            &["x0", "x1", "x2", "x3"],
            &["x0*x1", "x0*x2", "x1*x2"],
        )
        .unwrap(),
    );
    let unit_span = |l: u32, keep: &dyn Fn(&[u32]) -> bool| {
        let monos = monomials_of_degree(4, l);
        let vectors = monos
            .iter()
            .enumerate()
            .filter(|(_, m)| keep(m.exponents()))
            .map(|(i, _)| {
                let mut v = vec![0u64; monos.len()];
                v[i] = 1;
                v
            })
            .collect();
        Subspace::span(&field, monos.len(), vectors)
    };

    let mut witness = None;
    for l in 1..=8u32 {
        let w = g.singular_slice(l).map_err(|e| e.to_string())?;
        let sq = g.ideal_square_slice(l);
        let i = g.ideal_slice(l);
        ensure(w.space == unit_span(l, &in_singular), || {
            format!("l = {l}: W differs from the monomial oracle")
        })?;
        ensure(sq.space == unit_span(l, &in_square), || {
            format!("l = {l}: I^2 differs from the monomial oracle")
        })?;
        ensure(i.space == unit_span(l, &in_ideal), || {
            format!("l = {l}: I differs from the monomial oracle")
        })?;
        let nested = sq
            .space
            .is_subspace_of(&field, &w.space)
            .map_err(|e| e.to_string())?
            && w.space
                .is_subspace_of(&field, &i.space)
                .map_err(|e| e.to_string())?;
        ensure(nested, || format!("l = {l}: I^2 in W in I fails"))?;
        if witness.is_none() && w.dim() > sq.dim() {
            witness = Some((l, w.dim(), sq.dim()));
        }
    }
    match witness {
        Some((l, w, s)) => Ok(format!(
            "first gap at l = {l}: dim W = {w} > dim I^2 = {s}; nesting on 1..8"
        )),
        None => Err("no degree l <= 8 with dim W > dim I^2".into()),
    }
}

fn random_form<F: Field>(field: &F, nvars: usize, l: u32, rng: &mut ChaCha8Rng) -> Polynomial<F> {
    let mut terms = Vec::new();
    for m in monomials_of_degree(nvars, l) {
        if rng.gen_bool(0.6) {
            terms.push((m, field.from_i64(rng.gen_range(-50..=50))));
        }
    }
    Polynomial::from_terms(field, nvars, terms)
}

fn euler_identity<F: Field>(field: &F, rng: &mut ChaCha8Rng, count: usize) -> Result<(), String> {
    for _ in 0..count {
        let nvars = rng.gen_range(2..=5);
        let l = loop {
            let l = rng.gen_range(1..=8u32);
            if field.characteristic() == 0 || u64::from(l) % field.characteristic() != 0 {
                break l;
            }
        };
        let f = random_form(field, nvars, l, rng);
        let mut lhs = Polynomial::zero(field, nvars);
        for j in 0..nvars {
            lhs = lhs.add(
                &f.partial_derivative(j)
                    .multiply(&Polynomial::var(field, nvars, j)),
            );
        }
        let rhs = f.scale(&field.from_i64(i64::from(l)));
        ensure(lhs == rhs, || {
            format!("Euler identity fails for l = {l}, nvars = {nvars}")
        })?;
    }
    Ok(())
}

fn random_matrix<F: Field>(field: &F, rng: &mut ChaCha8Rng) -> Matrix<F::Elem> {
    let rows = rng.gen_range(1..=9);
    let cols = rng.gen_range(1..=9);
    // low rank on purpose: products of thin factors
    let inner = rng.gen_range(1..=rows.min(cols));
    let entry = |rng: &mut ChaCha8Rng| field.from_i64(rng.gen_range(-4..=4));
    let a = Matrix::from_rows(
        inner,
        (0..rows)
            .map(|_| (0..inner).map(|_| entry(rng)).collect())
            .collect(),
    );
    let b = Matrix::from_rows(
        cols,
        (0..inner)
            .map(|_| (0..cols).map(|_| entry(rng)).collect())
            .collect(),
    );
    a.mul(field, &b)
}

fn rref_laws<F: Field>(field: &F, rng: &mut ChaCha8Rng, count: usize) -> Result<(), String> {
    for _ in 0..count {
        let m = random_matrix(field, rng);
        let r = rref(field, &m);
        let again = rref(field, &r.matrix);
        ensure(again == r, || "rref is not idempotent".into())?;
        let ker = kernel_basis(field, &m);
        ensure(r.rank + ker.dim() == m.cols(), || {
            format!("rank {} + nullity {} != {}", r.rank, ker.dim(), m.cols())
        })?;
        ensure(rank(field, &m.transpose()) == r.rank, || {
            "row rank != column rank".into()
        })?;
        for v in ker.basis().iter_rows() {
            ensure(m.mul_vec(field, v).iter().all(|x| field.is_zero(x)), || {
                "kernel vector not killed".into()
            })?;
        }
    }
    Ok(())
}

fn canonicity<F: Field>(field: &F, rng: &mut ChaCha8Rng, count: usize) -> Result<(), String> {
    for _ in 0..count {
        let m = random_matrix(field, rng);
        let base = Subspace::span(field, m.cols(), m.clone().into_rows());
        let mut rows = m.into_rows();
        // add random combinations, then shuffle
        for _ in 0..3 {
            let c1 = field.from_i64(rng.gen_range(-3..=3));
            let c2 = field.from_i64(rng.gen_range(-3..=3));
            let (i, j) = (rng.gen_range(0..rows.len()), rng.gen_range(0..rows.len()));
            let v = rows[i]
                .iter()
                .zip(&rows[j])
                .map(|(a, b)| field.add(&field.mul(&c1, a), &field.mul(&c2, b)))
                .collect();
            rows.push(v);
        }
        rows.shuffle(rng);
        let cols = base.ambient_dim();
        ensure(Subspace::span(field, cols, rows) == base, || {
            "span depends on the spanning set".into()
        })?;
    }
    Ok(())
}

fn bin_report(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_singspace"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok(out.stdout)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    euler_identity(&PrimeField::default(), &mut rng, 400)?;
    euler_identity(&PrimeField::new(7).unwrap(), &mut rng, 50)?;
    euler_identity(&Rationals, &mut rng, 50)?;
    rref_laws(&PrimeField::default(), &mut rng, 250)?;
    rref_laws(&PrimeField::new(3).unwrap(), &mut rng, 100)?;
    rref_laws(&Rationals, &mut rng, 150)?;
    canonicity(&PrimeField::new(5).unwrap(), &mut rng, 100)?;
    canonicity(&Rationals, &mut rng, 100)?;

    let fixture = fixture("nodal_cubic.json");
    let args = ["verify", fixture.to_str().unwrap(), "--json"];
    let first = bin_report(&args)?;
    let second = bin_report(&args)?;
    ensure(!first.is_empty() && first == second, || {
        "two CLI runs differ".into()
    })?;
    let a = AnyIdeal::parse(FieldSpec::Rational, &["x", "y", "z"], &[NODAL]).unwrap();
    let b = AnyIdeal::parse(FieldSpec::Rational, &["x", "y", "z"], &[NODAL]).unwrap();
    ensure(
        a.singular_basis(7).unwrap() == b.singular_basis(7).unwrap(),
        || "W basis not reproducible".into(),
    )?;
    Ok("Euler identity x500, rref laws x500, span canonicity x200, byte-identical reruns".into())
}

fn criterion_7() -> Outcome {
    let window = Window::new(1, 10).unwrap();
    let prime = AnyIdeal::parse(FieldSpec::default(), &["x", "y", "z"], &[NODAL]).unwrap();
    let rational = AnyIdeal::parse(FieldSpec::Rational, &["x", "y", "z"], &[NODAL]).unwrap();
    let (tp, tq) = (
        prime.table(window).unwrap(),
        rational.table(window).unwrap(),
    );
    ensure(tp == tq, || {
        let bad = tp.iter().zip(&tq).find(|(a, b)| a != b).unwrap();
        format!("rows differ: {:?} vs {:?}", bad.0, bad.1)
    })?;
    let (hp, hq) = (
        prime.quotient_record(window).unwrap(),
        rational.quotient_record(window).unwrap(),
    );
    ensure(hp == hq, || "Hilbert records differ".into())?;
    let (op, oq) = (
        prime.omega_record(window).unwrap(),
        rational.omega_record(window).unwrap(),
    );
    ensure(op == oq, || "omega records differ".into())?;
    Ok(format!(
        "{} rows and both Hilbert records identical",
        tp.len()
    ))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("nodal cubic invariants", criterion_1),
        ("plane-curve differentials", criterion_2),
        ("twisted cubic", criterion_3),
        ("beta oracle sweep", criterion_4),
        ("non-lci witness", criterion_5),
        ("property suites", criterion_6),
        ("backend agreement", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({secs:.1}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({secs:.1}s) {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

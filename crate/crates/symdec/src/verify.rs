//! Suite runners that check the library's theorems over parameter grids and
//! corpora, reporting passed/skipped/failed with counterexample dumps.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexes::{level_2cm_check, sd_h, HVector, Matroid};
use crate::decompose::{decompose_i, f_transform, is_alternatingly_increasing};
use crate::error::{Error, Result};
use crate::families::{
    colored_derangement, colored_derangement_bruteforce, colored_eulerian,
    colored_eulerian_bruteforce, partial_colored_eulerian, typeb_bruteforce,
};
use crate::poly::{from_xm1_basis, rat, reflect_r, reverse_i, Poly, Rat};
use crate::rootcert::{interlaces, is_real_rooted};
use crate::zonotopes::{
    corpus, decompose_cs, ehrhart, ehrhart_bruteforce, halfopen_cube_hstar, hstar,
    interior_point_count, lawrence_hstar, ValuationSpec,
};

pub const DEFAULT_SEED: u64 = 20260823;

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub input: String,
    pub property: String,
    pub certificate: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite_name: String,
    pub params: String,
    pub checks_run: usize,
    pub passed: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(name: &str, params: String) -> Self {
        SuiteReport {
            suite_name: name.into(),
            params,
            checks_run: 0,
            passed: 0,
            skipped: 0,
            failures: Vec::new(),
        }
    }

    fn pass(&mut self) {
        self.checks_run += 1;
        self.passed += 1;
    }

    fn skip(&mut self) {
        self.checks_run += 1;
        self.skipped += 1;
    }

    fn fail(&mut self, input: String, property: &str, certificate: String) {
        self.checks_run += 1;
        self.failures.push(Failure { input, property: property.into(), certificate });
    }

    fn check(&mut self, ok: bool, input: impl Fn() -> String, property: &str) {
        if ok {
            self.pass();
        } else {
            self.fail(input(), property, String::new());
        }
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.checks_run += other.checks_run;
        self.passed += other.passed;
        self.skipped += other.skipped;
        self.failures.extend(other.failures);
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} ({} checks, {} passed, {} skipped, {} failed)",
            self.suite_name,
            if self.ok() { "PASS" } else { "FAIL" },
            self.checks_run,
            self.passed,
            self.skipped,
            self.failures.len()
        )
    }
}

/// p ≺ q as a boolean; sign patterns outside the certifier's scope count as
/// not interlacing.
fn prec(p: &Poly, q: &Poly) -> Result<bool> {
    match interlaces(p, q) {
        Ok(c) => Ok(c.holds),
        Err(Error::UnsupportedSignPattern) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The five equivalent interlacing statements for one polynomial: b ≺ a,
/// a ≺ p, b ≺ p, reverse ≺ p, reflected f ≺ f. Pass iff they agree.
pub fn verify_thm_2_7(p: &Poly, d: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("interlacing-equivalences", format!("p={p}, d={d}"));
    let dec = decompose_i(p, d)?;
    if !dec.a.has_nonneg_coeffs() || !dec.b.has_nonneg_coeffs() {
        return Err(Error::PreconditionViolated(
            "both symmetric parts must have nonnegative coefficients".into(),
        ));
    }
    let f = f_transform(p, d)?;
    let stmts = [
        prec(&dec.b, &dec.a)?,
        prec(&dec.a, p)?,
        prec(&dec.b, p)?,
        prec(&reverse_i(p, d)?, p)?,
        prec(&reflect_r(&f, d)?, &f)?,
    ];
    let agree = stmts.iter().all(|&s| s) || stmts.iter().all(|&s| !s);
    rep.check(agree, || format!("p={p}, d={d}"), &format!("five statements agree: {stmts:?}"));
    Ok(rep)
}

fn int_grids(len: usize, max: i64) -> impl Iterator<Item = Vec<i64>> {
    let mut cur = vec![0i64; len];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur.clone();
        let mut i = 0;
        loop {
            if i == len {
                done = true;
                break;
            }
            if cur[i] < max {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        Some(out)
    })
}

/// Exhaustive grid of the five-statement agreement check over
/// h = h_from_i(sum c_j x^j (x+1)^(d-j)), c in {0..entry_max}^(d+1).
pub fn verify_thm_2_7_grid(d_max: usize, entry_max: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        "interlacing-equivalences-grid",
        format!("d<={d_max}, entries<={entry_max}"),
    );
    for d in 0..=d_max {
        for c in int_grids(d + 1, entry_max) {
            let coords: Vec<Rat> = c.iter().map(|&v| rat(v)).collect();
            let i = from_xm1_basis(&coords, d, 1)?;
            let p = crate::operators::h_from_i(&i, d)?;
            match verify_thm_2_7(&p, d) {
                Ok(sub) => rep.absorb(sub),
                Err(Error::PreconditionViolated(_)) => rep.skip(),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(rep)
}

fn satisfies_hibi(c: &[Rat]) -> bool {
    let d = c.len() - 1;
    let mut front = Rat::zero();
    let mut back = Rat::zero();
    for j in 0..=d {
        front = &front + &c[j];
        back = &back + &c[d - j];
        if front > back {
            return false;
        }
    }
    true
}

/// Real-rootedness of both symmetric parts of h built from a c-vector
/// satisfying the partial-sum inequalities.
pub fn verify_thm_2_14(c: &[Rat], d: usize) -> Result<SuiteReport> {
    if c.len() != d + 1 {
        return Err(Error::LengthMismatch { expected: d + 1, got: c.len() });
    }
    if !satisfies_hibi(c) {
        return Err(Error::PreconditionViolated(
            "partial-sum inequalities on c are required".into(),
        ));
    }
    let mut rep = SuiteReport::new("real-rooted-decomposition", format!("c={c:?}, d={d}"));
    let i = from_xm1_basis(c, d, 1)?;
    let h = crate::operators::h_from_i(&i, d)?;
    let dec = decompose_i(&h, d)?;
    rep.check(
        is_real_rooted(&dec.a) && is_real_rooted(&dec.b),
        || format!("c={c:?}, d={d}, h={h}"),
        "both symmetric parts real-rooted",
    );
    Ok(rep)
}

pub fn verify_thm_2_14_grid(d_max: usize, entry_max: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(
        "real-rooted-decomposition-grid",
        format!("d<={d_max}, entries<={entry_max}"),
    );
    for d in 0..=d_max {
        for c in int_grids(d + 1, entry_max) {
            let coords: Vec<Rat> = c.iter().map(|&v| rat(v)).collect();
            if !satisfies_hibi(&coords) {
                rep.skip();
                continue;
            }
            rep.absorb(verify_thm_2_14(&coords, d)?);
        }
    }
    Ok(rep)
}

pub fn verify_section2() -> Result<Vec<SuiteReport>> {
    Ok(vec![verify_thm_2_7_grid(4, 2)?, verify_thm_2_14_grid(5, 2)?])
}

/// Colored Eulerian and derangement suites: reciprocal interlacing, oracle
/// equality, and random nonnegative combinations of the partial family.
pub fn verify_section3(n_max: usize, r_max: u32, seed: u64) -> Result<SuiteReport> {
    let mut rep =
        SuiteReport::new("colored-families", format!("n<={n_max}, r<={r_max}, seed={seed}"));
    for n in 1..=n_max {
        for r in 1..=r_max {
            let a = colored_eulerian(n, r)?;
            // for one color the polynomial is symmetric in window n-1, where
            // its reciprocal is itself
            let window = if r == 1 { n - 1 } else { n };
            rep.check(
                prec(&reverse_i(&a, window)?, &a)?,
                || format!("A n={n} r={r}"),
                "reciprocal interlaces colored Eulerian",
            );
            let dn = colored_derangement(n, r)?;
            rep.check(
                prec(&reverse_i(&dn, n)?, &dn)?,
                || format!("d n={n} r={r}"),
                "reciprocal interlaces colored derangement",
            );
            let dec = decompose_i(&dn, n)?;
            rep.check(
                is_real_rooted(&dec.a) && is_real_rooted(&dec.b),
                || format!("d n={n} r={r}"),
                "derangement decomposition real-rooted",
            );
            if n <= 6 {
                rep.check(
                    a == colored_eulerian_bruteforce(n, r)?,
                    || format!("A n={n} r={r}"),
                    "Eulerian generator matches enumeration",
                );
                rep.check(
                    dn == colored_derangement_bruteforce(n, r)?,
                    || format!("d n={n} r={r}"),
                    "derangement generator matches enumeration",
                );
            }
        }
    }
    // random nonnegative combinations of the two-or-more-color partial family
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r_hi = r_max.max(2);
    for n in 1..=n_max.min(6) {
        for _ in 0..10 {
            let mut p = Poly::zero();
            let mut label = Vec::new();
            for r in 2..=r_hi {
                for k in 0..=n {
                    let c: i64 = rng.gen_range(0..3);
                    if c > 0 {
                        p = &p + &partial_colored_eulerian(n, r, k)?.scale(&rat(c));
                        label.push(format!("{c}*A^{n}_{{{r},{k}}}"));
                    }
                }
            }
            rep.check(
                prec(&reverse_i(&p, n)?, &p)?,
                || format!("p = {}", label.join(" + ")),
                "reciprocal interlaces nonnegative combination",
            );
            rep.check(
                p.is_zero() || is_alternatingly_increasing(&p, n)?,
                || format!("p = {}", label.join(" + ")),
                "nonnegative combination alternatingly increasing",
            );
        }
    }
    Ok(rep)
}

fn random_valuation(rng: &mut ChaCha8Rng, d: usize) -> ValuationSpec {
    loop {
        let alpha: Vec<Rat> = (0..=d)
            .map(|_| match rng.gen_range(0..4) {
                0 => Rat::zero(),
                1 => crate::poly::rat_frac(1, 2),
                2 => rat(1),
                _ => rat(2),
            })
            .collect();
        if !alpha.iter().all(|a| a.is_zero()) {
            return ValuationSpec::new(alpha).expect("entries are nonnegative");
        }
    }
}

/// Full zonotope pipeline: oracle equality, Lawrence coefficients,
/// interior-gated real-rootedness under valuations, centrally symmetric
/// interlacing, and the half-open cube identities.
pub fn verify_section4(seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("zonotope-pipeline", format!("builtin corpus, seed={seed}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for z in corpus() {
        let d = z.dim();
        let label = || format!("gens={:?}", z.generators());
        let i = ehrhart(&z);
        rep.check(i == ehrhart_bruteforce(&z, d)?, label, "Ehrhart matches lattice-point count");
        let lh = lawrence_hstar(&z)?;
        let interior = interior_point_count(&z);
        rep.check(
            lh[d] == Rat::from_integer(interior.clone()),
            label,
            "top Lawrence coefficient equals interior count",
        );
        let mut valuations: Vec<Option<ValuationSpec>> = vec![None];
        let mut unit = vec![Rat::zero(); d + 1];
        unit[0] = rat(1);
        valuations.push(Some(ValuationSpec::new(unit).unwrap()));
        for _ in 0..4 {
            valuations.push(Some(random_valuation(&mut rng, d)));
        }
        for v in &valuations {
            let h = hstar(&z, v.as_ref())?;
            if interior.is_zero() {
                rep.skip(); // interior-point hypothesis unmet
                continue;
            }
            let dec = decompose_i(&h, d)?;
            rep.check(
                is_real_rooted(&dec.a) && is_real_rooted(&dec.b),
                || format!("{} v={v:?}", label()),
                "valuation h* has real-rooted decomposition",
            );
            rep.check(
                is_alternatingly_increasing(&h, d)?,
                || format!("{} v={v:?}", label()),
                "valuation h* alternatingly increasing",
            );
        }
        // the doubled zonotope is centrally symmetric
        let cs = z.doubled();
        rep.check(decompose_cs(&cs).is_ok(), label, "doubled zonotope is in the B2 cone");
        for v in &valuations {
            let h = hstar(&cs, v.as_ref())?;
            rep.check(
                prec(&reverse_i(&h, d)?, &h)?,
                || format!("doubled {} v={v:?}", label()),
                "centrally symmetric h* interlaced by reciprocal",
            );
        }
    }
    // half-open cube h* equals the signed-permutation polynomial
    for d in 0..=5usize {
        for k in 0..=d {
            rep.check(
                halfopen_cube_hstar(k, d)? == typeb_bruteforce(k + 1, d + 1)?,
                || format!("half-open cube k={k} d={d}"),
                "half-open cube h* equals signed-descent polynomial",
            );
        }
    }
    Ok(rep)
}

fn matroid_corpus() -> Result<Vec<(String, Matroid)>> {
    let mut out = Vec::new();
    for n in 1..=7usize {
        for k in 0..=n {
            out.push((format!("U_{{{k},{n}}}"), Matroid::uniform(k, n)?));
        }
    }
    let graphs: &[(&str, usize, &[(usize, usize)])] = &[
        ("C3", 3, &[(1, 2), (2, 3), (1, 3)]),
        ("C4", 4, &[(1, 2), (2, 3), (3, 4), (1, 4)]),
        ("C5", 5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]),
        ("P4", 4, &[(1, 2), (2, 3), (3, 4)]),
        ("star4", 4, &[(1, 2), (1, 3), (1, 4)]),
        ("K4", 4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
        ("K4-e", 4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]),
        ("C4+chord", 4, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]),
        ("2C3", 5, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]),
        ("C3+multi", 3, &[(1, 2), (1, 2), (2, 3), (1, 3)]),
    ];
    for &(name, v, edges) in graphs {
        out.push((name.to_string(), Matroid::graphic(v, edges)?));
    }
    Ok(out)
}

/// Subdivision h-polynomials: exhaustive gated h-vector grid plus the
/// matroid corpus.
pub fn verify_section5(d_max: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("subdivision-suite", format!("d<={d_max}, entries<=3"));
    for d in 0..=d_max {
        for c in int_grids(d + 1, 3) {
            let Ok(hv) = HVector::from_ints(&c, d) else {
                continue;
            };
            let s = sd_h(&hv)?;
            // subdivision of any nonnegative h-vector is real-rooted
            rep.check(
                is_real_rooted(&s),
                || format!("h={c:?}, d={d}"),
                "subdivision h-polynomial real-rooted",
            );
            if !level_2cm_check(&hv) {
                rep.skip();
                continue;
            }
            let dec = decompose_i(&s, d)?;
            let ok = is_real_rooted(&dec.a)
                && is_real_rooted(&dec.b)
                && is_alternatingly_increasing(&s, d)?;
            rep.check(
                ok,
                || format!("h={c:?}, d={d}, sd_h={s}"),
                "gated subdivision decomposition real-rooted and alternatingly increasing",
            );
        }
    }
    for (name, m) in matroid_corpus()? {
        if !m.is_coloop_free() {
            rep.skip();
            continue;
        }
        let hv = m.h_vector()?;
        rep.check(level_2cm_check(&hv), || name.clone(), "coloop-free matroid passes the gate");
        let s = sd_h(&hv)?;
        let dec = decompose_i(&s, hv.d)?;
        rep.check(
            is_real_rooted(&dec.a) && is_real_rooted(&dec.b),
            || name.clone(),
            "matroid subdivision decomposition real-rooted",
        );
    }
    Ok(rep)
}

/// All suites with their acceptance-scale default parameters.
pub fn verify_all(n_max: usize, seed: u64) -> Result<Vec<SuiteReport>> {
    let mut out = verify_section2()?;
    out.push(verify_section3(n_max.min(7), 3, seed)?);
    out.push(verify_section4(seed)?);
    out.push(verify_section5(5)?);
    Ok(out)
}

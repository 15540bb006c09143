//! Acceptance gate. Each criterion prints one `PASS`/`FAIL` line; the process exits
//! nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supersparse::compose::quartic_block_matrix;
use supersparse::hessenberg::{int, rat};
use supersparse::oracle::verify_family_budget;
use supersparse::{
    char_poly_exact, compose, eigenvalues, family_degree, family_matrix, family_poly, frobenius_height,
    poly_mul, root_cloud, verify_composition, verify_cramer_v, BigInt, BigRational, Complex64, Error, Family,
    FamilyId, FloatHessenberg, Hessenberg, RatPoly, SparseHessenberg,
};

fn id(family: Family, n: u32) -> FamilyId {
    FamilyId::new(family, n).unwrap()
}

/// Indices `1..=max` whose family polynomial has a companion.
fn members(family: Family, max: u32) -> impl Iterator<Item = FamilyId> {
    (1..=max).map(move |n| id(family, n)).filter(|&i| family_degree(i).unwrap_or(0) > 0)
}

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

// ---------------------------------------------------------------- 1

fn degree_identity() -> Result<String, String> {
    let start = Instant::now();
    let d = family_degree(id(Family::NarayanaMandelbrot, 36));
    let elapsed = start.elapsed();
    ensure(d == Some(395_032), || format!("degree(r36) = {d:?}"))?;
    within(elapsed, Duration::from_millis(1), "degree(r36)")?;
    let cows: Vec<u64> = (4..=10)
        .map(|n| family_degree(id(Family::NarayanaMandelbrot, n)).unwrap() + 1)
        .collect();
    ensure(cows == [2, 3, 4, 6, 9, 13, 19], || format!("cows terms {cows:?}"))?;
    Ok(format!("degree(r36) = 395032 in {elapsed:?}; cows 2,3,4,6,9,13,19"))
}

// ---------------------------------------------------------------- 2

fn exact_reproduction() -> Result<String, String> {
    let start = Instant::now();
    let plan = [
        (Family::Mandelbrot, 7),
        (Family::FibonacciMandelbrot, 12),
        (Family::NarayanaMandelbrot, 14),
        (Family::QuarticS, 2),
    ];
    let mut checked = 0;
    let mut largest = 0;
    for (family, max) in plan {
        for i in members(family, max) {
            let report = verify_family_budget(i, 160).map_err(|e| format!("{i}: {e}"))?;
            ensure(report.ok, || format!("{i}: {report}"))?;
            checked += 1;
            largest = largest.max(family_degree(i).unwrap());
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "family verification")?;
    Ok(format!("{checked} members exact, largest dim {largest}, {elapsed:.2?}"))
}

// ---------------------------------------------------------------- 3 and 4

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    let den = rng.gen_range(1..=3);
    let num = rng.gen_range(-bound * den..=bound * den);
    rat(num, den)
}

fn random_hessenberg(rng: &mut ChaCha8Rng) -> SparseHessenberg {
    let dim = rng.gen_range(1..=6);
    let mut entries = Vec::new();
    for r in 1..=dim {
        for c in r..=dim {
            entries.push((r, c, random_rational(rng, 3)));
        }
        if r > 1 {
            let s = [-2, -1, 1, 2][rng.gen_range(0..4)];
            entries.push((r, r - 1, int(s)));
        }
    }
    Hessenberg::from_entries(dim, entries).unwrap()
}

struct RandomCase {
    a: SparseHessenberg,
    b: SparseHessenberg,
    c0: BigRational,
}

fn random_cases() -> Vec<RandomCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    (0..200)
        .map(|_| {
            let a = random_hessenberg(&mut rng);
            let b = random_hessenberg(&mut rng);
            let c0 = random_rational(&mut rng, 5);
            RandomCase { a, b, c0 }
        })
        .collect()
}

fn random_compositions() -> Result<String, String> {
    let cases = random_cases();
    let start = Instant::now();
    let mut non_unit_alpha = 0;
    for (k, case) in cases.iter().enumerate() {
        let report = verify_composition(&case.a, Some(&case.b), &case.c0);
        ensure(report.ok, || format!("case {k}: {report}"))?;
        // independent restatement of the identity
        let z = RatPoly::z();
        let want = &poly_mul(&poly_mul(&z, &char_poly_exact(&case.a)), &char_poly_exact(&case.b))
            + &RatPoly::constant(case.c0.clone());
        ensure(char_poly_exact(&compose(&case.a, &case.b, case.c0.clone())) == want, || format!("case {k}"))?;
        let alpha = supersparse::alpha(&case.a, Some(&case.b));
        if alpha != BigRational::one() && alpha != -BigRational::one() {
            non_unit_alpha += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30), "random compositions")?;
    ensure(non_unit_alpha > 0, || "no case exercised alpha != ±1".into())?;
    Ok(format!("200/200 exact, {non_unit_alpha} with alpha != ±1, {elapsed:.2?}"))
}

fn cramer_step() -> Result<String, String> {
    let cases = random_cases();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc7a3e7);
    let mut samples = 0;
    for (k, case) in cases.iter().enumerate() {
        let mut passed = 0;
        let mut tries = 0;
        while passed < 3 {
            tries += 1;
            ensure(tries < 100, || format!("case {k}: no non-root sample found"))?;
            let z = rat(rng.gen_range(-40..=40), rng.gen_range(1..=7));
            match verify_cramer_v(&case.b, &z) {
                Ok(true) => passed += 1,
                Ok(false) => return Err(format!("case {k}: Cramer identity fails at z = {z}")),
                Err(Error::SingularSample { .. }) => continue,
                Err(e) => return Err(format!("case {k}: {e}")),
            }
        }
        samples += passed;
    }
    Ok(format!("{samples} sample points over 200 factors, all exact"))
}

// ---------------------------------------------------------------- 5

/// Roots of the depressed cubic `x³ + p·x + q` with one real root, by Cardano.
fn cardano(p: f64, q: f64) -> [Complex64; 3] {
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    assert!(disc > 0.0);
    let u = (-q / 2.0 + disc.sqrt()).cbrt();
    let v = (-q / 2.0 - disc.sqrt()).cbrt();
    let re = -(u + v) / 2.0;
    let im = 3f64.sqrt() / 2.0 * (u - v);
    [Complex64::new(u + v, 0.0), Complex64::new(re, im), Complex64::new(re, -im)]
}

fn newton_example() -> Result<String, String> {
    let r2 = 2f64.sqrt();
    let m: FloatHessenberg = compose(&Hessenberg::scalar(r2), &Hessenberg::scalar(-r2), -5.0);
    let got = eigenvalues(&m).map_err(|e| e.to_string())?;
    let want = cardano(-2.0, -5.0);
    let dist = match_distance(&got, &want);
    ensure(dist <= 1e-10, || format!("max matched distance {dist:e}"))?;
    let real = got
        .iter()
        .find(|z| z.im.abs() < 1e-12)
        .ok_or("no real eigenvalue")?
        .re;
    let delta = (real - 2.094_551_481_542_326_5).abs();
    ensure(delta <= 1e-10, || format!("real root {real}, |delta| = {delta:e}"))?;
    Ok(format!("real root {real}, |delta| = {delta:.1e}; cubic oracle distance {dist:.1e}"))
}

// ---------------------------------------------------------------- 6

fn bohemian_entry_sets() -> Result<String, String> {
    let minus_one = -BigRational::one();
    let mut count = 0;
    let plan = [
        (Family::Mandelbrot, 10, vec![minus_one.clone(), BigRational::zero()]),
        (Family::FibonacciMandelbrot, 14, vec![minus_one.clone(), BigRational::zero(), BigRational::one()]),
        (Family::NarayanaMandelbrot, 20, vec![minus_one.clone(), BigRational::zero(), BigRational::one()]),
        (Family::QuarticS, 4, vec![minus_one.clone(), BigRational::zero(), BigRational::one()]),
    ];
    for (family, max, allowed) in plan {
        for i in members(family, max) {
            let m = family_matrix(i).map_err(|e| e.to_string())?;
            let set = m.entry_set();
            ensure(set.iter().all(|v| allowed.contains(v)), || format!("{i}: entries {set:?}"))?;
            ensure(m.height() == BigRational::one(), || format!("{i}: height {}", m.height()))?;
            count += 1;
        }
    }
    let p4 = family_poly(id(Family::Mandelbrot, 4)).map_err(|e| e.to_string())?;
    let frob = frobenius_height(&p4).map_err(|e| e.to_string())?;
    ensure(frob == BigInt::from(6), || format!("frobenius height of p4 = {frob}"))?;
    Ok(format!("{count} companions with height 1; frobenius(p4) height 6"))
}

// ---------------------------------------------------------------- 7

/// Double-double real: `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn from_f64(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    fn from_big(c: &BigInt) -> Dd {
        let hi = c.to_f64().unwrap();
        let rest = c - BigInt::from(hi as i128);
        Dd::renorm(hi, rest.to_f64().unwrap())
    }

    fn renorm(s: f64, e: f64) -> Dd {
        let hi = s + e;
        Dd { hi, lo: e - (hi - s) }
    }

    fn add(self, o: Dd) -> Dd {
        let s = self.hi + o.hi;
        let bb = s - self.hi;
        let e = (self.hi - (s - bb)) + (o.hi - bb);
        Dd::renorm(s, e + self.lo + o.lo)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Dd::renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }
}

#[derive(Clone, Copy)]
struct CDd {
    re: Dd,
    im: Dd,
}

impl CDd {
    fn real(v: Dd) -> CDd {
        CDd { re: v, im: Dd::from_f64(0.0) }
    }

    fn mul_add(self, x: Complex64, a: Dd) -> CDd {
        let (xr, xi) = (Dd::from_f64(x.re), Dd::from_f64(x.im));
        CDd {
            re: self.re.mul(xr).add(self.im.mul(xi).neg()).add(a),
            im: self.re.mul(xi).add(self.im.mul(xr)),
        }
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }
}

/// Aberth-Ehrlich simultaneous iteration on monic integer coefficients, with
/// double-double Horner so that clustered roots are resolved past `f64` conditioning.
fn aberth_roots(coeffs: &[BigInt]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    assert!(coeffs[n] == BigInt::one());
    let c: Vec<Dd> = coeffs.iter().map(Dd::from_big).collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, v| m.max(v.hi.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    let eval = |x: Complex64| {
        let mut p = CDd::real(c[n]);
        let mut dp = CDd::real(Dd::from_f64(0.0));
        for &a in c[..n].iter().rev() {
            dp = dp.mul_add(x, Dd::from_f64(0.0));
            dp = CDd { re: dp.re.add(p.re), im: dp.im.add(p.im) };
            p = p.mul_add(x, a);
        }
        (p.to_c64(), dp.to_c64())
    };
    let mut quiet = 0;
    for _ in 0..5000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        // a few extra sweeps once converged, to settle the last bits
        if moved < 1e-15 {
            quiet += 1;
            if quiet == 3 {
                break;
            }
        }
    }
    z
}

/// Minimum-cost perfect matching by the Hungarian method; returns the largest
/// matched distance.
fn match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    let cost = |i: usize, j: usize| (a[i - 1] - b[j - 1]).norm();
    let (mut u, mut v) = (vec![0.0; n + 1], vec![0.0; n + 1]);
    let (mut p, mut way) = (vec![0usize; n + 1], vec![0usize; n + 1]);
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let (mut delta, mut j1) = (f64::INFINITY, 0);
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| cost(p[j], j)).fold(0.0, f64::max)
}

fn root_clouds() -> Result<String, String> {
    let start = Instant::now();
    let cloud = root_cloud(id(Family::NarayanaMandelbrot, 20)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300), "root_cloud(narayana, 20)")?;
    ensure(cloud.roots.len() == 871, || format!("{} roots", cloud.roots.len()))?;
    let values: Vec<Complex64> = cloud.roots.iter().map(|r| r.value()).collect();
    let conj: Vec<Complex64> = values.iter().map(|z| z.conj()).collect();
    let pairing = match_distance(&values, &conj);
    ensure(pairing <= 1e-8, || format!("conjugate pairing distance {pairing:e}"))?;
    let good = cloud.roots.iter().filter(|r| r.residual <= 1e4).count();
    let frac = good as f64 / cloud.roots.len() as f64;
    ensure(frac >= 0.99, || format!("only {good}/871 residuals <= 1e4"))?;

    let mut compared = 0;
    let mut worst: f64 = 0.0;
    for family in Family::ALL {
        for i in members(family, 40) {
            let d = family_degree(i).unwrap();
            if d > 32 {
                break;
            }
            let oracle = aberth_roots(family_poly(i).unwrap().coeffs());
            let got = eigenvalues(&family_matrix(i).unwrap().to_float()).map_err(|e| e.to_string())?;
            let dist = match_distance(&got, &oracle);
            ensure(dist <= 1e-8, || format!("{i}: matched distance {dist:e}"))?;
            worst = worst.max(dist);
            compared += 1;
        }
    }
    Ok(format!(
        "871 roots in {elapsed:.2?}, pairing {pairing:.1e}, {good}/871 residuals <= 1e4; \
         {compared} members vs Aberth oracle, worst {worst:.1e}"
    ))
}

// ---------------------------------------------------------------- 8

fn nested_composition() -> Result<String, String> {
    let mut dims = Vec::new();
    // S_2 from the scalar base, then S_{n+1} from S_n for n = 2, 3.
    let zero = SparseHessenberg::scalar(int(0));
    let s2 = family_matrix(id(Family::QuarticS, 2)).map_err(|e| e.to_string())?;
    ensure(char_poly_exact(&s2) == char_poly_exact(&compose(&zero, &zero, int(1))), || "S_2".into())?;
    for n in [2, 3] {
        let s = family_matrix(id(Family::QuarticS, n)).map_err(|e| e.to_string())?;
        let next = family_matrix(id(Family::QuarticS, n + 1)).map_err(|e| e.to_string())?;
        let half = compose(&s, &s, int(0));
        let nested = compose(&half, &half, int(1));
        let block = quartic_block_matrix(&s);
        let expected = family_poly(id(Family::QuarticS, n + 1)).unwrap().to_rational();
        let got = char_poly_exact(&next);
        ensure(got == expected, || format!("S_{}: companion does not match polynomial", n + 1))?;
        ensure(char_poly_exact(&nested) == got, || format!("S_{}: nested form differs", n + 1))?;
        ensure(char_poly_exact(&block) == got, || format!("S_{}: block form differs", n + 1))?;
        dims.push(next.dim());
    }
    Ok(format!("S_3, S_4 (dims {dims:?}) agree across block, nested and recursive forms"))
}

fn main() {
    let checks: [(&str, Check); 8] = [
        ("1 degree identity", degree_identity),
        ("2 exact family reproduction", exact_reproduction),
        ("3 random compositions", random_compositions),
        ("4 Cramer step", cramer_step),
        ("5 Newton cubic", newton_example),
        ("6 Bohemian entry sets", bohemian_entry_sets),
        ("7 root clouds", root_clouds),
        ("8 nested composition", nested_composition),
    ];
    // keep panic messages out of the report
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in checks {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

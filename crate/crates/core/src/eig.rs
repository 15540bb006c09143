//! Eigenvalues of companion matrices and residual certificates for family roots.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::compose::family_matrix;
use crate::error::{Error, Result};
use crate::family::{family_degree, Family, FamilyId};
use crate::hessenberg::FloatHessenberg;
use crate::DEFAULT_DENSE_CAP;

/// Unit roundoff of `f64`.
const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Eigenvalues by shifted QR, with the default dense cap.
pub fn eigenvalues(m: &FloatHessenberg) -> Result<Vec<Complex64>> {
    eigenvalues_capped(m, DEFAULT_DENSE_CAP)
}

/// Eigenvalues by balancing followed by Francis double-shift QR on the Hessenberg form.
///
/// At most `40·dim` QR sweeps are spent before [`Error::ConvergenceFailure`].
/// Complex eigenvalues come out in exactly conjugate pairs.
pub fn eigenvalues_capped(m: &FloatHessenberg, cap: usize) -> Result<Vec<Complex64>> {
    let n = m.dim();
    if n > cap {
        return Err(Error::DenseCapExceeded { dim: n, cap });
    }
    let mut h = Dense::from(m);
    h.balance();
    h.hqr()
}

/// Square matrix with 1-based indexing; row and column 0 are unused.
struct Dense {
    n: usize,
    data: Vec<f64>,
}

impl From<&FloatHessenberg> for Dense {
    fn from(m: &FloatHessenberg) -> Self {
        let n = m.dim();
        let mut d = Dense { n, data: vec![0.0; (n + 1) * (n + 1)] };
        for (r, c, &v) in m.iter() {
            d.set(r, c, v);
        }
        d
    }
}

impl Dense {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * (self.n + 1) + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: f64) {
        let n = self.n;
        self.data[i * (n + 1) + j] = v;
    }

    #[inline]
    fn sub(&mut self, i: usize, j: usize, v: f64) {
        let n = self.n;
        self.data[i * (n + 1) + j] -= v;
    }

    /// Diagonal similarity by powers of two, which keeps the Hessenberg pattern.
    fn balance(&mut self) {
        const RADIX: f64 = 2.0;
        let n = self.n;
        let mut done = false;
        while !done {
            done = true;
            for i in 1..=n {
                let (mut c, mut r) = (0.0, 0.0);
                for j in 1..=n {
                    if j != i {
                        c += self.at(j, i).abs();
                        r += self.at(i, j).abs();
                    }
                }
                if c == 0.0 || r == 0.0 {
                    continue;
                }
                let s = c + r;
                let mut f = 1.0;
                let mut g = r / RADIX;
                while c < g {
                    f *= RADIX;
                    c *= RADIX * RADIX;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= RADIX * RADIX;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 1..=n {
                        let v = self.at(i, j) * g;
                        self.set(i, j, v);
                        let v = self.at(j, i) * f;
                        self.set(j, i, v);
                    }
                }
            }
        }
    }

    fn hqr(mut self) -> Result<Vec<Complex64>> {
        let n = self.n;
        let mut out = vec![Complex64::default(); n + 1];
        let mut anorm = 0.0;
        for i in 1..=n {
            for j in i.saturating_sub(1).max(1)..=n {
                anorm += self.at(i, j).abs();
            }
        }
        let max_sweeps = 40 * n;
        let mut sweeps = 0;
        let mut nn = n;
        let mut shift = 0.0;
        let mut its = 0;
        while nn >= 1 {
            // look for a negligible subdiagonal element
            let mut l = nn;
            while l >= 2 {
                let mut s = self.at(l - 1, l - 1).abs() + self.at(l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if self.at(l, l - 1).abs() <= f64::EPSILON * s {
                    self.set(l, l - 1, 0.0);
                    break;
                }
                l -= 1;
            }
            let mut x = self.at(nn, nn);
            if l == nn {
                out[nn] = Complex64::new(x + shift, 0.0);
                nn -= 1;
                its = 0;
                continue;
            }
            let mut y = self.at(nn - 1, nn - 1);
            let mut w = self.at(nn, nn - 1) * self.at(nn - 1, nn);
            if l == nn - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += shift;
                if q >= 0.0 {
                    let z = p + z.copysign(p);
                    out[nn - 1] = Complex64::new(x + z, 0.0);
                    out[nn] = Complex64::new(if z != 0.0 { x - w / z } else { x + z }, 0.0);
                } else {
                    out[nn - 1] = Complex64::new(x + p, -z);
                    out[nn] = Complex64::new(x + p, z);
                }
                nn -= 2;
                its = 0;
                continue;
            }
            if sweeps >= max_sweeps {
                return Err(Error::ConvergenceFailure { index: nn });
            }
            if its > 0 && its % 10 == 0 {
                // exceptional shift
                shift += x;
                for i in 1..=nn {
                    self.sub(i, i, x);
                }
                let s = self.at(nn, nn - 1).abs() + self.at(nn - 1, nn - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            sweeps += 1;
            self.francis_sweep(l, nn, x, y, w);
        }
        out.remove(0);
        Ok(out)
    }

    /// One implicit double-shift sweep on the active block `l..=nn`.
    fn francis_sweep(&mut self, l: usize, nn: usize, x: f64, y: f64, w: f64) {
        let (mut p, mut q, mut r);
        let mut z;
        // find two consecutive small subdiagonal elements
        let mut m = nn - 2;
        loop {
            z = self.at(m, m);
            let rr = x - z;
            let s = y - z;
            p = (rr * s - w) / self.at(m + 1, m) + self.at(m, m + 1);
            q = self.at(m + 1, m + 1) - z - rr - s;
            r = self.at(m + 2, m + 1);
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let u = self.at(m, m - 1).abs() * (q.abs() + r.abs());
            let v = p.abs() * (self.at(m - 1, m - 1).abs() + z.abs() + self.at(m + 1, m + 1).abs());
            if u <= f64::EPSILON * v {
                break;
            }
            m -= 1;
        }
        for i in (m + 2)..=nn {
            self.set(i, i - 2, 0.0);
            if i != m + 2 {
                self.set(i, i - 3, 0.0);
            }
        }
        for k in m..nn {
            let mut xk = 0.0;
            if k != m {
                p = self.at(k, k - 1);
                q = self.at(k + 1, k - 1);
                r = if k != nn - 1 { self.at(k + 2, k - 1) } else { 0.0 };
                xk = p.abs() + q.abs() + r.abs();
                if xk != 0.0 {
                    p /= xk;
                    q /= xk;
                    r /= xk;
                }
            }
            let s = (p * p + q * q + r * r).sqrt().copysign(p);
            if s == 0.0 {
                continue;
            }
            if k == m {
                if l != m {
                    let v = -self.at(k, k - 1);
                    self.set(k, k - 1, v);
                }
            } else {
                self.set(k, k - 1, -s * xk);
            }
            p += s;
            let xr = p / s;
            let yr = q / s;
            let zr = r / s;
            q /= p;
            r /= p;
            // row transformation
            for j in k..=nn {
                let mut pp = self.at(k, j) + q * self.at(k + 1, j);
                if k != nn - 1 {
                    pp += r * self.at(k + 2, j);
                    self.sub(k + 2, j, pp * zr);
                }
                self.sub(k + 1, j, pp * yr);
                self.sub(k, j, pp * xr);
            }
            // column transformation
            let mmin = nn.min(k + 3);
            for i in l..=mmin {
                let mut pp = xr * self.at(i, k) + yr * self.at(i, k + 1);
                if k != nn - 1 {
                    pp += zr * self.at(i, k + 2);
                    self.sub(i, k + 2, pp * r);
                }
                self.sub(i, k + 1, pp * q);
                self.sub(i, k, pp);
            }
        }
    }
}

/// Complex number as `mantissa · 2^exp`, renormalized after every operation so
/// deep recurrences never overflow. Scaling by powers of two is exact, so the
/// rounding matches plain `f64` arithmetic wherever that stays in range.
#[derive(Clone, Copy, Debug)]
struct Scaled {
    m: Complex64,
    exp: i64,
}

fn pow2(k: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

fn exponent(v: f64) -> i64 {
    ((v.to_bits() >> 52) & 0x7ff) as i64 - 1023
}

impl Scaled {
    fn new(m: Complex64) -> Self {
        Scaled { m, exp: 0 }.normalized()
    }

    fn real(v: f64) -> Self {
        Scaled::new(Complex64::new(v, 0.0))
    }

    fn normalized(self) -> Self {
        let big = self.m.re.abs().max(self.m.im.abs());
        if big == 0.0 {
            return Scaled { m: Complex64::default(), exp: 0 };
        }
        let k = exponent(big);
        Scaled { m: self.m * pow2(-k), exp: self.exp + k }
    }

    fn mul(self, o: Scaled) -> Scaled {
        Scaled { m: self.m * o.m, exp: self.exp + o.exp }.normalized()
    }

    fn add(self, o: Scaled) -> Scaled {
        if self.m == Complex64::default() {
            return o;
        }
        if o.m == Complex64::default() {
            return self;
        }
        let e = self.exp.max(o.exp);
        let align = |v: Scaled| {
            let d = v.exp - e;
            if d < -1000 { Complex64::default() } else { v.m * pow2(d) }
        };
        Scaled { m: align(self) + align(o), exp: e }.normalized()
    }

    fn abs(self) -> Scaled {
        Scaled { m: Complex64::new(self.m.norm(), 0.0), exp: self.exp }.normalized()
    }

    fn log2_abs(self) -> f64 {
        self.m.norm().log2() + self.exp as f64
    }
}

/// Family recurrence evaluated at `z` together with its magnitude bound: the same
/// recurrence run on `|z|` and the magnitudes of the earlier terms.
fn recurrence_at(id: FamilyId, z: Complex64) -> (Scaled, Scaled) {
    let family = id.family();
    let one = Scaled::real(1.0);
    let zero = Scaled::real(0.0);
    let lam = Scaled::new(z);
    let lam_abs = lam.abs();
    let base_ones = match family {
        Family::Mandelbrot | Family::QuarticS => 0,
        Family::FibonacciMandelbrot => 1,
        Family::NarayanaMandelbrot => 2,
    };
    let lag = base_ones;
    let mut terms: Vec<(Scaled, Scaled)> = Vec::with_capacity(id.n() as usize + 1);
    for k in 0..=id.n() as usize {
        let next = if k == 0 {
            (zero, zero)
        } else if k <= base_ones {
            (one, one)
        } else {
            let (va, pa) = terms[k - 1];
            match family {
                Family::QuarticS => {
                    let v2 = va.mul(va);
                    let p2 = pa.mul(pa);
                    let l3 = lam.mul(lam).mul(lam);
                    let a3 = lam_abs.mul(lam_abs).mul(lam_abs);
                    (l3.mul(v2.mul(v2)).add(one), a3.mul(p2.mul(p2)).add(one))
                }
                _ => {
                    let (vb, pb) = terms[k - 1 - lag];
                    (lam.mul(va).mul(vb).add(one), lam_abs.mul(pa).mul(pb).add(one))
                }
            }
        };
        terms.push(next);
    }
    terms.pop().expect("nonempty")
}

/// Backward-error style residual of `z` as a root of the family polynomial:
/// `|value| / (u·Φ)`, where `value` is the recurrence evaluated at `z` and `Φ` the
/// recurrence run on magnitudes. Values of order one certify `z`.
///
/// When `Φ` leaves the `f64` range, [`Error::Overflow`] carries `log10` of the residual.
pub fn residual(id: FamilyId, z: Complex64) -> Result<f64> {
    if family_degree(id).unwrap_or(0) == 0 {
        return Err(Error::NoCompanion(id));
    }
    let (value, phi) = recurrence_at(id, z);
    if value.m == Complex64::default() {
        return Ok(0.0);
    }
    let log2 = value.log2_abs() - phi.log2_abs() - UNIT_ROUNDOFF.log2();
    if phi.exp >= 1023 {
        return Err(Error::Overflow { log10_value: log2 * std::f64::consts::LOG10_2 });
    }
    Ok(log2.exp2())
}

/// Residual, falling back to the log-scale value when the bound overflows.
fn residual_or_fallback(id: FamilyId, z: Complex64) -> Result<f64> {
    match residual(id, z) {
        Err(Error::Overflow { log10_value }) => Ok(10f64.powf(log10_value)),
        other => other,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
}

impl Root {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSource {
    Family(FamilyId),
    Custom,
}

/// Computed roots with per-root residuals, sorted by `(re, im, residual)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootCloud {
    pub roots: Vec<Root>,
    pub source: RootSource,
    pub dim: usize,
}

fn cmp_roots(a: &Root, b: &Root) -> Ordering {
    a.re.total_cmp(&b.re)
        .then(a.im.total_cmp(&b.im))
        .then(a.residual.total_cmp(&b.residual))
}

impl RootCloud {
    pub fn new(mut roots: Vec<Root>, source: RootSource) -> Self {
        for r in &mut roots {
            // no negative zeros in output
            r.re += 0.0;
            r.im += 0.0;
        }
        roots.sort_by(cmp_roots);
        let dim = roots.len();
        RootCloud { roots, source, dim }
    }

    /// Roots of an arbitrary matrix; residuals are unknown and reported as NaN.
    pub fn custom(m: &FloatHessenberg) -> Result<Self> {
        let roots = eigenvalues(m)?
            .into_iter()
            .map(|z| Root { re: z.re, im: z.im, residual: f64::NAN })
            .collect();
        Ok(RootCloud::new(roots, RootSource::Custom))
    }

    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    /// CSV with header `re,im,residual` and shortest round-trip decimals.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,residual\n");
        for r in &self.roots {
            writeln!(s, "{},{},{}", r.re, r.im, r.residual).expect("write to string");
        }
        s
    }
}

/// Parses the `re,im,residual` CSV format.
pub fn parse_root_csv(text: &str) -> Result<Vec<Root>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "re,im,residual" => {}
        Some((_, header)) => {
            return Err(Error::Parse { line: Some(1), msg: format!("expected header re,im,residual, got {header:?}") })
        }
        None => return Err(Error::Parse { line: Some(1), msg: "missing header".into() }),
    }
    let mut roots = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || Error::Parse { line: Some(line_no), msg: format!("malformed row {line:?}") };
        if fields.len() != 3 {
            return Err(bad());
        }
        let parse = |s: &str| s.parse::<f64>().map_err(|_| bad());
        roots.push(Root { re: parse(fields[0])?, im: parse(fields[1])?, residual: parse(fields[2])? });
    }
    Ok(roots)
}

/// Eigenvalues of the family companion with residual certificates.
pub fn root_cloud(id: FamilyId) -> Result<RootCloud> {
    root_cloud_capped(id, DEFAULT_DENSE_CAP)
}

pub fn root_cloud_capped(id: FamilyId, cap: usize) -> Result<RootCloud> {
    let degree = family_degree(id).unwrap_or(0);
    if degree > cap as u64 {
        return Err(Error::DenseCapExceeded { dim: degree as usize, cap });
    }
    let m = family_matrix(id)?.to_float();
    let roots = eigenvalues_capped(&m, cap)?
        .into_iter()
        .map(|z| Ok(Root { re: z.re, im: z.im, residual: residual_or_fallback(id, z)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(RootCloud::new(roots, RootSource::Family(id)))
}

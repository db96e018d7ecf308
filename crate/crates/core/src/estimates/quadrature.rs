//! Adaptive Gauss–Kronrod and Levin collocation for complex integrands.

// QUADPACK constants are kept as published.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rustfft::num_complex::Complex64;

// 21-point Kronrod abscissae on [0, 1) (symmetric) and weights; the odd
// entries (1, 3, ..., 9) are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_067_938_966,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Integral estimate with an error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

impl Quadrature {
    pub fn zero() -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
        }
    }

    pub fn combine(self, other: Quadrature) -> Quadrature {
        Quadrature {
            value: self.value + other.value,
            error: self.error + other.error,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

/// One 21-point Kronrod rule on `[a, b]`; the error is `|K21 - G10|`.
pub fn gauss_kronrod21(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> Quadrature {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[10];
    let mut g = Complex64::new(0.0, 0.0);
    for i in 0..10 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += s * WGK[i];
        if i % 2 == 1 {
            g += s * WG[i / 2];
        }
    }
    Quadrature {
        value: k * h,
        error: ((k - g) * h).norm(),
        evaluations: 21,
    }
}

struct Panel {
    a: f64,
    b: f64,
    q: Quadrature,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.q.error == other.q.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q.error.total_cmp(&other.q.error)
    }
}

/// Globally adaptive bisection until the summed error is at most `abs_tol`
/// or `max_evals` is reached.
pub fn adaptive_gk(
    f: &impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_evals: usize,
) -> Quadrature {
    if a == b {
        return Quadrature::zero();
    }
    let first = gauss_kronrod21(f, a, b);
    let mut evaluations = first.evaluations;
    let mut heap = BinaryHeap::new();
    let mut value = first.value;
    let mut error = first.error;
    heap.push(Panel { a, b, q: first });
    while error > abs_tol && evaluations < max_evals {
        let Some(p) = heap.pop() else { break };
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            // cannot split further; keep the panel as is
            heap.push(p);
            break;
        }
        let l = gauss_kronrod21(f, p.a, m);
        let r = gauss_kronrod21(f, m, p.b);
        evaluations += 42;
        value += l.value + r.value - p.q.value;
        error += l.error + r.error - p.q.error;
        heap.push(Panel { a: p.a, b: m, q: l });
        heap.push(Panel { a: m, b: p.b, q: r });
    }
    // re-sum to shed the cancellation of the running updates
    let (value, error) = heap.iter().fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| {
        (v + p.q.value, e + p.q.error)
    });
    Quadrature {
        value,
        error,
        evaluations,
    }
}

/// Chebyshev–Lobatto nodes on `[-1, 1]` in decreasing order and the
/// differentiation matrix (row-major).
fn cheb(n: usize) -> (Vec<f64>, Vec<f64>) {
    let m = n - 1;
    let x: Vec<f64> = (0..n)
        .map(|i| (std::f64::consts::PI * i as f64 / m as f64).cos())
        .collect();
    let c = |i: usize| -> f64 {
        let e = if i == 0 || i == m { 2.0 } else { 1.0 };
        if i.is_multiple_of(2) {
            e
        } else {
            -e
        }
    };
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            if i != j {
                let v = c(i) / c(j) / (x[i] - x[j]);
                d[i * n + j] = v;
                row += v;
            }
        }
        // negative-sum trick for the diagonal
        d[i * n + i] = -row;
    }
    (x, d)
}

/// Solves the dense complex system `a x = b` by Gaussian elimination with
/// partial pivoting. Returns `None` for a singular matrix.
fn solve(mut a: Vec<Complex64>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            a[i * n + col].norm().total_cmp(&a[j * n + col].norm())
        })?;
        if a[piv * n + col].norm() == 0.0 {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            b.swap(piv, col);
        }
        let inv = 1.0 / a[col * n + col];
        for r in col + 1..n {
            let factor = a[r * n + col] * inv;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = a[col * n + k];
                a[r * n + k] -= factor * v;
            }
            let v = b[col];
            b[r] -= factor * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for k in r + 1..n {
            s -= a[r * n + k] * x[k];
        }
        x[r] = s / a[r * n + r];
    }
    Some(x)
}

/// Levin collocation for `int_a^b f(x) exp(i phi(x)) dx` with `n` nodes.
///
/// Solves `p' + i phi' p = f` at Chebyshev–Lobatto nodes; the integral is
/// `p(b) e^{i phi(b)} - p(a) e^{i phi(a)}`. Requires `phi'` free of zeros on
/// `[a, b]`.
pub fn levin(
    f: &impl Fn(f64) -> f64,
    phi: &impl Fn(f64) -> f64,
    dphi: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    n: usize,
) -> Option<Complex64> {
    let (x, d) = cheb(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let pts: Vec<f64> = x.iter().map(|s| mid + half * s).collect();
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = Complex64::new(d[i * n + j] / half, 0.0);
        }
        m[i * n + i] += Complex64::new(0.0, dphi(pts[i]));
    }
    let rhs: Vec<Complex64> = pts.iter().map(|&t| Complex64::new(f(t), 0.0)).collect();
    let p = solve(m, rhs)?;
    // pts[0] = b, pts[n-1] = a
    let v = p[0] * Complex64::cis(phi(b)) - p[n - 1] * Complex64::cis(phi(a));
    v.is_finite().then_some(v)
}

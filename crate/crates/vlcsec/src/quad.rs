//! Adaptive Gauss-Kronrod quadrature.
//!
//! 7-point Gauss / 15-point Kronrod pair with worst-interval-first bisection.
//! This is the independent oracle the rest of the crate checks its closed
//! forms against, so it deliberately shares no code with them.

use crate::error::{Error, Result};

/// Hard cap on the number of subintervals.
pub const MAX_SUBDIVISIONS: usize = 1 << 15;

/// Absolute floor added to the relative tolerance target so that integrals
/// with value 0 can converge.
const ABS_FLOOR: f64 = 1e-300;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub subdivisions: usize,
}

// Abscissae of the 15-point Kronrod rule (positive half, descending).
// Odd indices are the embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

// Kronrod weights matching XGK.
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// 7-point Gauss weights; WG[j] pairs with XGK[2j+1], WG[3] with the center.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Single Gauss-Kronrod evaluation on [lo, hi].
/// Returns (kronrod value, rescaled error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);

    let fc = f(center);
    let mut res_kronrod = WGK[7] * fc;
    let mut res_gauss = WG[3] * fc;
    let mut res_abs = res_kronrod.abs();

    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        let fsum = f1 + f2;
        res_kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * fsum;
        }
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = res_kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    // QUADPACK-style error rescaling.
    let mut err = ((res_kronrod - res_gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

#[derive(Debug, Clone, Copy)]
struct Interval {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    id: usize,
}

/// Adaptively integrate `f` over [lo, hi] until the summed error estimate
/// drops below `rel_tol * |value|` (plus a tiny absolute floor).
///
/// Deterministic: identical inputs produce bit-identical results. The
/// worst-error interval is refined first, with ties broken by insertion
/// order.
pub fn adaptive_quad<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
) -> Result<QuadratureResult> {
    if !(lo <= hi) {
        return Err(Error::Domain(format!(
            "integration bounds out of order: [{lo}, {hi}]"
        )));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::Domain(format!("rel_tol must be positive, got {rel_tol}")));
    }
    if lo == hi {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            subdivisions: 0,
        });
    }

    let (v0, e0) = gk15(&f, lo, hi);
    if !v0.is_finite() {
        return Err(Error::Domain("integrand produced a non-finite value".into()));
    }
    let mut intervals = vec![Interval {
        lo,
        hi,
        value: v0,
        error: e0,
        id: 0,
    }];
    let mut next_id = 1usize;

    loop {
        let total: f64 = intervals.iter().map(|iv| iv.value).sum();
        let total_err: f64 = intervals.iter().map(|iv| iv.error).sum();
        let target = rel_tol * total.abs() + ABS_FLOOR;
        if total_err <= target {
            return Ok(QuadratureResult {
                value: total,
                abs_error_estimate: total_err,
                subdivisions: intervals.len(),
            });
        }
        if intervals.len() >= MAX_SUBDIVISIONS {
            return Err(Error::NonConvergent(format!(
                "adaptive quadrature hit {MAX_SUBDIVISIONS} subintervals \
                 (error {total_err:.3e}, target {target:.3e})"
            )));
        }

        // Split the interval with the largest error estimate (ties: oldest).
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| {
                a.error
                    .total_cmp(&b.error)
                    .then(b.id.cmp(&a.id))
            })
            .map(|(i, _)| i)
            .expect("non-empty interval list");
        let iv = intervals.swap_remove(worst);
        let mid = 0.5 * (iv.lo + iv.hi);
        if mid <= iv.lo || mid >= iv.hi {
            // Interval at floating-point resolution; keep its estimate.
            let mut done = intervals;
            done.push(iv);
            let total: f64 = done.iter().map(|i| i.value).sum();
            let total_err: f64 = done.iter().map(|i| i.error).sum();
            return Ok(QuadratureResult {
                value: total,
                abs_error_estimate: total_err,
                subdivisions: done.len(),
            });
        }
        for (a, b) in [(iv.lo, mid), (mid, iv.hi)] {
            let (v, e) = gk15(&f, a, b);
            if !v.is_finite() {
                return Err(Error::Domain("integrand produced a non-finite value".into()));
            }
            intervals.push(Interval {
                lo: a,
                hi: b,
                value: v,
                error: e,
                id: next_id,
            });
            next_id += 1;
        }
    }
}

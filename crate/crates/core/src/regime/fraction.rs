//! Best rational approximation with bounded denominator.

/// Closest `p/q` to `x` with `1 ≤ q ≤ q_max`; ties go to the smaller
/// denominator. Candidates are the continued-fraction convergents and their
/// semiconvergents, which contain every best approximation.
pub fn nearest_fraction(x: f64, q_max: u32) -> (i64, u32) {
    assert!(q_max >= 1 && x.is_finite());
    let q_max = q_max as i64;
    let mut best = (x.round() as i64, 1i64);
    let consider = |p: i64, q: i64, best: &mut (i64, i64)| {
        if q < 1 || q > q_max {
            return;
        }
        let err = (x - p as f64 / q as f64).abs();
        let cur = (x - best.0 as f64 / best.1 as f64).abs();
        if err < cur || (err == cur && q < best.1) {
            *best = (p, q);
        }
    };
    // convergents h/k of x
    let (mut h0, mut k0, mut h1, mut k1) = (1i64, 0i64, x.floor() as i64, 1i64);
    let mut frac = x - x.floor();
    consider(h1, k1, &mut best);
    for _ in 0..64 {
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor() as i64;
        frac = inv - inv.floor();
        for t in 1..=a {
            let (h, k) = (t * h1 + h0, t * k1 + k0);
            if k > q_max {
                break;
            }
            consider(h, k, &mut best);
        }
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > q_max {
            break;
        }
        (h0, k0, h1, k1) = (h1, k1, h2, k2);
    }
    (best.0, best.1 as u32)
}

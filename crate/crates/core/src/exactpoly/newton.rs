use num::{BigRational, Zero};

use super::intpoly::IntPoly;

/// Power sums `p_1..=p_max_m` of the roots of `a`, counted with multiplicity.
///
/// Newton's identities with `a = c_d z^d + ... + c_0`:
/// `c_d p_m + c_{d-1} p_{m-1} + ... + c_{d-m+1} p_1 + m c_{d-m} = 0`,
/// where `c_k = 0` for `k < 0`. Returns an empty vector for constants.
pub fn newton_power_sums(a: &IntPoly, max_m: usize) -> Vec<BigRational> {
    let Some(d) = a.degree().filter(|&d| d > 0) else {
        return vec![BigRational::zero(); max_m];
    };
    let c = a.coeffs();
    let lead = BigRational::from(c[d].clone());
    // e[i] = c_{d-i}
    let e = |i: usize| -> Option<&num::BigInt> { (i <= d).then(|| &c[d - i]) };
    let mut sums: Vec<BigRational> = Vec::with_capacity(max_m);
    for m in 1..=max_m {
        let mut acc = match e(m) {
            Some(cm) => BigRational::from(cm * num::BigInt::from(m)),
            None => BigRational::zero(),
        };
        for i in 1..m.min(d + 1) {
            let ci = &c[d - i];
            if !ci.is_zero() {
                acc += &sums[m - i - 1] * BigRational::from(ci.clone());
            }
        }
        sums.push(-acc / &lead);
    }
    sums
}

/// Sums of inverse powers `sum z_k^{-m}` over the nonzero roots of `a`, for `m = 1..=max_m`.
///
/// The factor `z^k` is stripped and the remaining polynomial reversed.
pub fn inverse_power_sums(a: &IntPoly, max_m: usize) -> Vec<BigRational> {
    let Some(low) = a.lowest_degree() else {
        return vec![BigRational::zero(); max_m];
    };
    let stripped = a.shift_down(low).expect("lowest_degree divides");
    let rev = stripped
        .reverse_nonzero()
        .expect("stripped polynomial has nonzero constant term");
    newton_power_sums(&rev, max_m)
}

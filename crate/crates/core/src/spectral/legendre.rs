use crate::scalar::Real;

/// `(L_k(ξ), L_k'(ξ))` by the three-term recurrence.
///
/// The derivative uses `L'_{k+1} = L'_{k−1} + (2k+1) L_k`, which stays exact
/// at `ξ = ±1` where the closed form `k(ξL_k − L_{k−1})/(ξ² − 1)` is singular.
pub fn legendre_eval<T: Real>(k: usize, xi: T) -> (T, T) {
    let mut vals = vec![T::zero(); k + 1];
    let mut ders = vec![T::zero(); k + 1];
    legendre_all(xi, &mut vals, &mut ders);
    (vals[k], ders[k])
}

/// Fills `vals[k] = L_k(ξ)` and `ders[k] = L_k'(ξ)` for `k < vals.len()`.
pub fn legendre_all<T: Real>(xi: T, vals: &mut [T], ders: &mut [T]) {
    let n = vals.len();
    debug_assert_eq!(n, ders.len());
    if n == 0 {
        return;
    }
    vals[0] = T::one();
    ders[0] = T::zero();
    if n == 1 {
        return;
    }
    vals[1] = xi;
    ders[1] = T::one();
    for k in 1..n - 1 {
        let kf = T::from_usize_lossy(k);
        let two_k1 = T::from_usize_lossy(2 * k + 1);
        vals[k + 1] = (two_k1 * xi * vals[k] - kf * vals[k - 1]) / (kf + T::one());
        ders[k + 1] = ders[k - 1] + two_k1 * vals[k];
    }
}

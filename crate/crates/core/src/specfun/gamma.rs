use core::f64::consts::PI;

use crate::C64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Principal branch of log Γ(z) for Re z ≥ 1/2 (Lanczos).
fn ln_gamma_right(z: C64) -> C64 {
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + HALF_LN_2PI + x.ln()
}

/// Log-gamma: `exp(ln_gamma(z)) = Γ(z)`. The imaginary part is not the
/// continuous branch, only a valid logarithm.
pub fn ln_gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // Γ(z) = π / (sin πz Γ(1-z))
        let s = (z * PI).sin();
        C64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(1.0 - z)
    } else {
        ln_gamma_right(z)
    }
}

/// Γ(z) for complex z. Poles return infinity.
pub fn gamma(z: C64) -> C64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return C64::new(f64::INFINITY, 0.0);
    }
    if z.im == 0.0 && z.re > 0.0 && z.re <= 171.0 && z.re == z.re.round() {
        let mut f = 1.0;
        for k in 2..(z.re as u32) {
            f *= k as f64;
        }
        return C64::new(f, 0.0);
    }
    let g = ln_gamma(z).exp();
    if z.im == 0.0 { C64::new(g.re, 0.0) } else { g }
}

pub fn gamma_real(x: f64) -> f64 {
    gamma(C64::new(x, 0.0)).re
}

/// 1/Γ(z), zero at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return C64::new(0.0, 0.0);
    }
    1.0 / gamma(z)
}

/// Shifted factorial (λ)_n = λ(λ+1)⋯(λ+n−1).
pub fn pochhammer(lambda: C64, n: usize) -> C64 {
    let mut p = C64::new(1.0, 0.0);
    for k in 0..n {
        p *= lambda + k as f64;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(C64::new(3.7, 1.0), 0), C64::new(1.0, 0.0));
        assert_eq!(pochhammer(C64::new(1.0, 0.0), 5).re, 120.0);
        assert_relative_eq!(pochhammer(C64::new(0.5, 0.0), 3).re, 1.875, epsilon = 1e-15);
    }

    #[test]
    fn gamma_values() {
        assert_relative_eq!(gamma_real(0.5), PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma_real(5.0), 24.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_real(1.0 / 3.0), 2.678_938_534_707_747_6, max_relative = 1e-14);
        assert_relative_eq!(gamma_real(-1.5), 2.363_271_801_207_355, max_relative = 1e-14);
        assert_relative_eq!(gamma_real(30.5), 4.8226969334909086e31, max_relative = 1e-13);
        // Γ(1+i) from mpmath
        let g = gamma(C64::new(1.0, 1.0));
        assert_relative_eq!(g.re, 0.498_015_668_118_356_04, max_relative = 1e-14);
        assert_relative_eq!(g.im, -0.154_949_828_301_810_68, max_relative = 1e-13);
    }

    #[test]
    fn gamma_poles() {
        assert!(gamma(C64::new(-2.0, 0.0)).re.is_infinite());
        assert_eq!(rgamma(C64::new(0.0, 0.0)), C64::new(0.0, 0.0));
    }
}

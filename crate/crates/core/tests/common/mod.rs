//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the library's tensor or boost code paths.
#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinboost::{momentum_state, MomentumState, SpinJ, SpinState, StateVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_amplitudes(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn random_spin_state(rng: &mut impl Rng, spin: SpinJ) -> SpinState {
    let d = spin.dim();
    SpinState::new(spin, StateVector::new(random_amplitudes(rng, d * d))).unwrap()
}

pub fn random_momentum_state(rng: &mut impl Rng) -> MomentumState {
    let a = random_amplitudes(rng, 4);
    MomentumState::new([a[0], a[1], a[2], a[3]]).unwrap()
}

pub fn random_alpha_state(rng: &mut impl Rng) -> MomentumState {
    momentum_state(rng.random_range(0.0..std::f64::consts::PI))
}

fn fact(n: i64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Wigner's factorial formula for `d^j_{m'm}(β)`, row `m'`, column `m`, both
/// in the order `j, …, -j`. Returned as a dense row-major real array.
pub fn wigner_d_closed_form(spin: SpinJ, beta: f64) -> Vec<Vec<f64>> {
    let tj = spin.twice() as i64;
    let d = spin.dim();
    let (s, c) = (beta / 2.0).sin_cos();
    let mut out = vec![vec![0.0; d]; d];
    for (r, row) in out.iter_mut().enumerate() {
        for (col, entry) in row.iter_mut().enumerate() {
            // integer combinations j±m, j±m' (all exact for half-integer j)
            let jpm_p = tj - r as i64; // j + m'
            let jmm_p = r as i64; // j - m'
            let jpm = tj - col as i64; // j + m
            let jmm = col as i64; // j - m
            let m_minus_mp = jpm - jpm_p; // m - m'
            let pre = (fact(jpm) * fact(jmm) * fact(jpm_p) * fact(jmm_p)).sqrt();
            let mut sum = 0.0;
            for k in 0..=tj {
                let a = jpm - k;
                let b = jmm_p - k;
                let e = k - m_minus_mp;
                if a < 0 || b < 0 || e < 0 {
                    continue;
                }
                let sign = if (k - m_minus_mp).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let cos_pow = (tj - 2 * k + m_minus_mp) as i32;
                let sin_pow = (2 * k - m_minus_mp) as i32;
                sum += sign * pre / (fact(a) * fact(k) * fact(b) * fact(e)) * c.powi(cos_pow) * s.powi(sin_pow);
            }
            *entry = sum;
        }
    }
    out
}

/// Nested-loop partial trace over a row-major density matrix.
pub fn partial_trace_loops(rho: &[Vec<Complex64>], dims: &[usize], keep: &[usize]) -> Vec<Vec<Complex64>> {
    let n = dims.len();
    let total: usize = dims.iter().product();
    let digits = |mut idx: usize| {
        let mut d = vec![0; n];
        for s in (0..n).rev() {
            d[s] = idx % dims[s];
            idx /= dims[s];
        }
        d
    };
    let kept_dim: usize = keep.iter().map(|&s| dims[s]).product();
    let kept_index = |d: &[usize]| keep.iter().fold(0, |acc, &s| acc * dims[s] + d[s]);
    let mut out = vec![vec![Complex64::ZERO; kept_dim]; kept_dim];
    for i in 0..total {
        let di = digits(i);
        for j in 0..total {
            let dj = digits(j);
            let traced_match = (0..n).filter(|s| !keep.contains(s)).all(|s| di[s] == dj[s]);
            if traced_match {
                out[kept_index(&di)][kept_index(&dj)] += rho[i][j];
            }
        }
    }
    out
}

pub fn purity_loops(rho: &[Vec<Complex64>]) -> f64 {
    let n = rho.len();
    let mut tr = Complex64::ZERO;
    for i in 0..n {
        for k in 0..n {
            tr += rho[i][k] * rho[k][i];
        }
    }
    tr.re
}

fn kron_dense(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![Complex64::ZERO; ra * rb]; ra * rb];
    for i1 in 0..ra {
        for j1 in 0..ra {
            for i2 in 0..rb {
                for j2 in 0..rb {
                    out[i1 * rb + i2][j1 * rb + j2] = a[i1][j1] * b[i2][j2];
                }
            }
        }
    }
    out
}

fn to_complex(m: Vec<Vec<f64>>) -> Vec<Vec<Complex64>> {
    m.into_iter()
        .map(|r| r.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
        .collect()
}

/// Linear entropy change from explicit full-space matrices: the boost is the
/// 36×36 operator `Σ_{a,b} |a⟩⟨a| ⊗ d(s_aΩ) ⊗ |b⟩⟨b| ⊗ d(s_bΩ)`.
pub fn brute_force_delta_e(p: &MomentumState, s: &SpinState, omega: f64, blocks: &[Vec<usize>]) -> f64 {
    let spin = s.spin();
    let d = spin.dim();
    let dims = [2, d, 2, d];
    let n = 4 * d * d;

    // |ψ⟩ in [A_p, A_s, B_p, B_s] order by explicit index loops
    let pa = p.amplitudes();
    let sa = s.vector().amplitudes();
    let mut psi = vec![Complex64::ZERO; n];
    for ap in 0..2 {
        for a in 0..d {
            for bp in 0..2 {
                for b in 0..d {
                    psi[((ap * d + a) * 2 + bp) * d + b] = pa[2 * ap + bp] * sa[a * d + b];
                }
            }
        }
    }

    let signs = [1.0, -1.0];
    let mut u = vec![vec![Complex64::ZERO; n]; n];
    for ap in 0..2 {
        for bp in 0..2 {
            let mut proj_a = vec![vec![Complex64::ZERO; 2]; 2];
            proj_a[ap][ap] = Complex64::ONE;
            let mut proj_b = vec![vec![Complex64::ZERO; 2]; 2];
            proj_b[bp][bp] = Complex64::ONE;
            let da = to_complex(wigner_d_closed_form(spin, signs[ap] * omega));
            let db = to_complex(wigner_d_closed_form(spin, signs[bp] * omega));
            let term = kron_dense(&kron_dense(&kron_dense(&proj_a, &da), &proj_b), &db);
            for i in 0..n {
                for j in 0..n {
                    u[i][j] += term[i][j];
                }
            }
        }
    }
    let boosted: Vec<Complex64> = (0..n).map(|i| (0..n).map(|j| u[i][j] * psi[j]).sum()).collect();

    let density = |v: &[Complex64]| -> Vec<Vec<Complex64>> {
        (0..n).map(|i| (0..n).map(|j| v[i] * v[j].conj()).collect()).collect()
    };
    let entropy = |rho: &[Vec<Complex64>]| -> f64 {
        blocks
            .iter()
            .map(|b| 1.0 - purity_loops(&partial_trace_loops(rho, &dims, b)))
            .sum()
    };
    entropy(&density(&boosted)) - entropy(&density(&psi))
}

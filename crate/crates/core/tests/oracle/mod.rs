// Copyright 2026 The tqsf Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Test-side reference built without the library's spin code.
//!
//! S² comes from ladder operators, S² = S_z² + (S₊S₋ + S₋S₊)/2, with |0⟩ as spin up. Projectors
//! onto one S value are Löwdin products Π_{S'≠S} (S² − S'(S'+1)) / (S(S+1) − S'(S'+1)), so no
//! eigendecomposition is involved.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C64 = Complex64;

/// Dense S² of the qubits `0..j`, embedded in `n` qubits.
pub fn spin_squared(j: usize, n: usize) -> DMatrix<f64> {
    let dim = 1usize << n;
    let mut sz = DMatrix::<f64>::zeros(dim, dim);
    let mut plus = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        let ones = (0..j).filter(|&q| i >> q & 1 == 1).count();
        sz[(i, i)] = j as f64 / 2.0 - ones as f64;
        for q in 0..j {
            if i >> q & 1 == 1 {
                // raising flips a 1 (down) to 0 (up)
                plus[(i & !(1 << q), i)] += 1.0;
            }
        }
    }
    let minus = plus.transpose();
    &sz * &sz + (&plus * &minus + &minus * &plus) * 0.5
}

/// Allowed 2S values for `j` spins.
pub fn two_s_values(j: usize) -> Vec<u32> {
    (0..=j as u32)
        .filter(|t| (j as u32 - t).is_multiple_of(2))
        .collect()
}

fn s_s1(two_s: u32) -> f64 {
    let s = f64::from(two_s) / 2.0;
    s * (s + 1.0)
}

/// Projector onto 2S = `two_s` of the first `j` qubits.
pub fn spin_projector(j: usize, n: usize, two_s: u32) -> DMatrix<f64> {
    let s2 = spin_squared(j, n);
    let dim = 1usize << n;
    let target = s_s1(two_s);
    let mut p = DMatrix::<f64>::identity(dim, dim);
    for other in two_s_values(j) {
        if other == two_s {
            continue;
        }
        let v = s_s1(other);
        let factor = (&s2 - DMatrix::<f64>::identity(dim, dim) * v) / (target - v);
        p = factor * p;
    }
    p
}

pub fn apply(m: &DMatrix<f64>, psi: &[C64]) -> Vec<C64> {
    (0..m.nrows())
        .map(|r| m.row(r).iter().zip(psi).map(|(a, b)| b * *a).sum::<C64>())
        .collect()
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

/// Keeps only basis states with M = n/2 − popcount equal to `two_m`/2.
pub fn project_m(psi: &[C64], two_m: i32) -> Vec<C64> {
    let n = psi.len().trailing_zeros() as i32;
    psi.iter()
        .enumerate()
        .map(|(i, a)| {
            if n - 2 * i.count_ones() as i32 == two_m {
                *a
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect()
}

/// ⟨ψ|P_[S,M]|ψ⟩.
pub fn weight_sm(psi: &[C64], two_s: u32, two_m: i32) -> f64 {
    let n = psi.len().trailing_zeros() as usize;
    norm_sqr(&apply(&spin_projector(n, n, two_s), &project_m(psi, two_m)))
}

/// Weight of a full prefix-spin path (2S_[1..n]), optionally restricted to one M.
pub fn weight_path(psi: &[C64], two_s_sequence: &[u32], two_m: Option<i32>) -> f64 {
    let n = psi.len().trailing_zeros() as usize;
    let mut v = match two_m {
        Some(m) => project_m(psi, m),
        None => psi.to_vec(),
    };
    for (idx, &two_s) in two_s_sequence.iter().enumerate().skip(1) {
        v = apply(&spin_projector(idx + 1, n, two_s), &v);
    }
    norm_sqr(&v)
}

/// Every valid path for `n` spins as a 2S sequence.
pub fn all_paths(n: usize) -> Vec<Vec<u32>> {
    let mut paths = vec![vec![1u32]];
    for _ in 1..n {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().unwrap();
                let mut out = Vec::new();
                let mut up = p.clone();
                up.push(last + 1);
                out.push(up);
                if last > 0 {
                    let mut down = p;
                    down.push(last - 1);
                    out.push(down);
                }
                out
            })
            .collect();
    }
    paths
}

/// Residual ‖O ψ − λ ψ‖.
pub fn residual(op: &DMatrix<f64>, psi: &[C64], lambda: f64) -> f64 {
    let image = apply(op, psi);
    image
        .iter()
        .zip(psi)
        .map(|(a, b)| (a - b * lambda).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// exp(i·alpha·A) for a real symmetric A by a scaled Taylor series.
pub fn expm_i(a: &DMatrix<f64>, alpha: f64) -> DMatrix<C64> {
    let dim = a.nrows();
    let squarings = 6;
    let scale = alpha / f64::from(1 << squarings);
    let x: DMatrix<C64> = a.map(|v| C64::new(0.0, v * scale));
    let mut term = DMatrix::<C64>::identity(dim, dim);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &x / C64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Dense SWAP of qubits `i` and `j`.
pub fn swap_matrix(i: usize, j: usize, n: usize) -> DMatrix<f64> {
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    for x in 0..dim {
        let (bi, bj) = (x >> i & 1, x >> j & 1);
        let y = (x & !(1 << i) & !(1 << j)) | (bj << i) | (bi << j);
        m[(y, x)] = 1.0;
    }
    m
}

pub fn random_amplitudes(n: usize, rng: &mut impl Rng) -> Vec<C64> {
    let v: Vec<C64> = (0..1usize << n)
        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = norm_sqr(&v).sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// C(n, k).
pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

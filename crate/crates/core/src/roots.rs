//! Positive roots of the compact parts needed for degree counting, with the
//! highest weight of the ray `(m, 0, ..., 0)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::scalar::{int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootType {
    /// `B_r x B_r`, in `2r` orthonormal coordinates.
    BxB(u32),
    /// `C_4`, normalised with short roots `(e_j +- e_k)/2`.
    C4,
    /// `D_n`, in `n` orthonormal coordinates.
    D(u32),
    /// `E_6` in simple-root coordinates, inner product the Cartan matrix.
    E6,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    pub kind: RootType,
    pub positive: Vec<Vec<Rational>>,
    /// Direction of `lambda_(m,0,...,0)`, i.e. its value at `m = 1`.
    pub lambda: Vec<Rational>,
    gram: Option<Vec<Vec<i64>>>,
}

/// Bourbaki labelling: 1-3-4-5-6 with 2 attached to 4.
pub const E6_CARTAN: [[i64; 6]; 6] = [
    [2, 0, -1, 0, 0, 0],
    [0, 2, 0, -1, 0, 0],
    [-1, 0, 2, -1, 0, 0],
    [0, -1, -1, 2, -1, 0],
    [0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, -1, 2],
];

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![int(0); n];
    v[i] = int(1);
    v
}

fn combine(a: &[Rational], b: &[Rational], sb: i64, scale: &Rational) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| (x.clone() + int(sb) * y.clone()) * scale.clone()).collect()
}

impl RootSystemData {
    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        match &self.gram {
            None => a.iter().zip(b).map(|(x, y)| x.clone() * y.clone()).sum(),
            Some(g) => {
                let mut acc = int(0);
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        if g[i][j] != 0 {
                            acc += x.clone() * y.clone() * int(g[i][j]);
                        }
                    }
                }
                acc
            }
        }
    }

    /// `B_r x B_r`: `e_i`, `e_i +- e_j` in each block; `lambda = e_1 + e_{r+1}`.
    pub fn b_times_b(r: u32) -> Self {
        let r = r as usize;
        let n = 2 * r;
        let mut positive = Vec::new();
        for block in [0, r] {
            for i in 0..r {
                positive.push(unit(n, block + i));
                for j in i + 1..r {
                    for s in [1, -1] {
                        positive.push(combine(&unit(n, block + i), &unit(n, block + j), s, &int(1)));
                    }
                }
            }
        }
        let mut lambda = unit(n, 0);
        lambda[r] = int(1);
        RootSystemData { kind: RootType::BxB(r as u32), positive, lambda, gram: None }
    }

    /// `C_4` with roots `(e_j +- e_k)/2`, `e_j`; `lambda = (1,1,1,1)/2`.
    pub fn c4() -> Self {
        let half = rat(1, 2);
        let mut positive = Vec::new();
        for j in 0..4 {
            positive.push(unit(4, j));
            for k in j + 1..4 {
                for s in [1, -1] {
                    positive.push(combine(&unit(4, j), &unit(4, k), s, &half));
                }
            }
        }
        RootSystemData { kind: RootType::C4, positive, lambda: vec![half; 4], gram: None }
    }

    /// `D_n`: `e_i +- e_j`; `lambda = e_1 + e_2`.
    pub fn d(n: u32) -> Self {
        let n = n as usize;
        let mut positive = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for s in [1, -1] {
                    positive.push(combine(&unit(n, i), &unit(n, j), s, &int(1)));
                }
            }
        }
        let mut lambda = unit(n, 0);
        lambda[1] = int(1);
        RootSystemData { kind: RootType::D(n as u32), positive, lambda, gram: None }
    }

    /// `E_6` from its simple roots by closure under root strings;
    /// `lambda` is the highest root.
    pub fn e6() -> Self {
        let gram: Vec<Vec<i64>> = E6_CARTAN.iter().map(|r| r.to_vec()).collect();
        let roots = positive_roots_from_cartan(&E6_CARTAN);
        let positive: Vec<Vec<Rational>> = roots.iter().map(|v| v.iter().map(|&c| int(c)).collect()).collect();
        let highest = roots.iter().max_by_key(|v| v.iter().sum::<i64>()).expect("nonempty").clone();
        RootSystemData {
            kind: RootType::E6,
            positive,
            lambda: highest.iter().map(|&c| int(c)).collect(),
            gram: Some(gram),
        }
    }

    /// Positive roots `alpha` with `<t * lambda, alpha> != 0`.
    pub fn nonorthogonal_count(&self, t: i64) -> usize {
        let lam: Vec<Rational> = self.lambda.iter().map(|x| x.clone() * int(t)).collect();
        self.positive.iter().filter(|a| self.inner(&lam, a) != int(0)).count()
    }
}

/// Positive roots in simple-root coordinates for a simply laced or general
/// Cartan matrix `a[i][j] = <alpha_i^vee, alpha_j>`, grown by height using
/// the string rule `q = p - <beta, alpha_i^vee>`.
pub fn positive_roots_from_cartan<const N: usize>(a: &[[i64; N]; N]) -> Vec<Vec<i64>> {
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..N)
        .map(|i| {
            let mut v = vec![0; N];
            v[i] = 1;
            v
        })
        .collect();
    found.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..N {
                // <beta, alpha_i^vee>
                let pairing: i64 = (0..N).map(|j| beta[j] * a[i][j]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if found.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !found.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        found.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    found.into_iter().collect()
}

//! Smith normal form with unimodular transforms, `left * m * right = diag`.

use crate::matrix::IntMatrix;

#[derive(Debug, Clone)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Invariant factors, non-negative, each dividing the next.
    pub diag: Vec<i64>,
}

struct Work {
    a: Vec<Vec<i128>>,
    l: Vec<Vec<i128>>,
    r: Vec<Vec<i128>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.l.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.r.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: i128) {
        for m in [&mut self.a, &mut self.l] {
            let s = m[src].clone();
            for (d, v) in m[dst].iter_mut().zip(s) {
                *d += f * v;
            }
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: i128) {
        for m in [&mut self.a, &mut self.r] {
            for row in m.iter_mut() {
                row[dst] += f * row[src];
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in self.a[i].iter_mut().chain(self.l[i].iter_mut()) {
            *v = -*v;
        }
    }
}

fn ident(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn to_matrix(m: &[Vec<i128>]) -> IntMatrix {
    IntMatrix::from_rows(
        &m.iter()
            .map(|row| {
                row.iter()
                    .map(|&v| i64::try_from(v).expect("SNF transform entry overflow"))
                    .collect()
            })
            .collect::<Vec<_>>(),
    )
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut w = Work {
        a: (0..rows)
            .map(|i| m.row(i).iter().map(|&x| i128::from(x)).collect())
            .collect(),
        l: ident(rows),
        r: ident(cols),
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // smallest non-zero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = w.a[i][j];
                    if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = w.a[i][t].div_euclid(w.a[t][t]);
                if q != 0 {
                    w.add_row(i, t, -q);
                }
                if w.a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = w.a[t][j].div_euclid(w.a[t][t]);
                if q != 0 {
                    w.add_col(j, t, -q);
                }
                if w.a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let p = w.a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.add_row(t, i, 1),
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
    }
    let diag = (0..steps)
        .map(|i| i64::try_from(w.a[i][i]).expect("invariant factor overflow"))
        .collect();
    SmithForm {
        left: to_matrix(&w.l),
        right: to_matrix(&w.r),
        diag,
    }
}

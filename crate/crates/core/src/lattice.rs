//! Exact integer linear algebra: Smith normal form, cokernels of lattice
//! maps and dual bases of their free parts.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from row vectors. All rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row {i}");
            for (j, v) in r.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum()).collect()
    }

    /// Determinant over the rationals (square matrices only).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(self[(i, j)].clone())).collect()).collect();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return BigInt::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= a[c][c].clone();
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let sub = &f * &a[c][k];
                    a[r][k] -= sub;
                }
            }
        }
        det.to_integer()
    }

    /// Inverse of a unimodular matrix; `None` if not invertible over Z.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self[(i, j)].clone())
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(p, c);
            let inv = a[c][c].recip();
            for v in a[c].iter_mut() {
                *v *= inv.clone();
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..2 * n {
                        let sub = &f * &a[c][k];
                        a[r][k] -= sub;
                    }
                }
            }
        }
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &a[i][n + j];
                if !v.is_integer() {
                    return None;
                }
                out[(i, j)] = v.to_integer();
            }
        }
        Some(out)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).invariant_factors.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `u * m * v == d`, with `d` diagonal and its nonzero entries
/// `invariant_factors` positive and successively dividing.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let qt = d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row(i, t, &-&qt);
                u.add_row(i, t, &-&qt);
                if !d[(i, t)].is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let qt = d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col(j, t, &-&qt);
                v.add_col(j, t, &-&qt);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the remainder.
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..rows.min(cols)).map(|i| d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect();
    SmithDecomposition { u, d, v, invariant_factors }
}

/// A finitely generated abelian group presented as a quotient of `Z^ambient`.
///
/// Coordinates of an element are the torsion coordinates (reduced modulo
/// `torsion[i]`) followed by the free coordinates. `projection` maps
/// `Z^ambient` onto these coordinates; `section` maps coordinates back to a
/// representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitelyGeneratedAbelianGroup {
    pub ambient: usize,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    projection: IntMatrix,
    section: IntMatrix,
}

impl FinitelyGeneratedAbelianGroup {
    pub fn coordinate_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// The projection `a -> class(a)` as a matrix (rows = coordinates).
    pub fn projection_matrix(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn project(&self, a: &[BigInt]) -> Vec<BigInt> {
        let raw = self.projection.apply(a);
        self.reduce(&raw)
    }

    /// Canonical representative of a coordinate vector.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.coordinate_count());
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| if i < self.torsion.len() { c.mod_floor(&self.torsion[i]) } else { c.clone() })
            .collect()
    }

    /// A lift of a coordinate vector to `Z^ambient`.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.section.apply(coords)
    }

    /// Human-readable structure, e.g. `Z^2 + Z/2`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// `coker(Z^n -> Z^d)` for the `d x n` matrix `m` acting on column vectors.
pub fn cokernel(m: &IntMatrix) -> FinitelyGeneratedAbelianGroup {
    let d = m.rows;
    let snf = smith_normal_form(m);
    let rank = snf.invariant_factors.len();

    let torsion_rows: Vec<usize> = (0..rank).filter(|&i| !snf.invariant_factors[i].is_one()).collect();
    let torsion: Vec<BigInt> = torsion_rows.iter().map(|&i| snf.invariant_factors[i].clone()).collect();

    // Free rows of U are a Z-basis of the functionals vanishing on im(m);
    // bring them to Hermite normal form so the basis does not depend on
    // pivoting details.
    let free_rows: Vec<Vec<BigInt>> = (rank..d).map(|i| snf.u.row(i)).collect();
    let hermite = hermite_rows(free_rows, d);

    // Assemble a unimodular change of coordinates: unit rows, torsion rows, free rows.
    let mut full = IntMatrix::zeros(d, d);
    let mut order = Vec::new();
    for i in 0..rank {
        if snf.invariant_factors[i].is_one() {
            order.push(snf.u.row(i));
        }
    }
    for &i in &torsion_rows {
        order.push(snf.u.row(i));
    }
    order.extend(hermite.iter().cloned());
    for (i, r) in order.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            full[(i, j)] = v.clone();
        }
    }
    let inverse = full.unimodular_inverse().expect("change of basis is unimodular");

    let units = rank - torsion.len();
    let coords = torsion.len() + hermite.len();
    let mut projection = IntMatrix::zeros(coords, d);
    let mut section = IntMatrix::zeros(d, coords);
    for c in 0..coords {
        for j in 0..d {
            projection[(c, j)] = full[(units + c, j)].clone();
            section[(j, c)] = inverse[(j, units + c)].clone();
        }
    }
    FinitelyGeneratedAbelianGroup { ambient: d, free_rank: hermite.len(), torsion, projection, section }
}

/// Functionals `u_1..u_r` on `Z^ambient` forming a basis of `Hom(G, Z)`.
pub fn dual_lattice_basis(g: &FinitelyGeneratedAbelianGroup) -> Vec<Vec<BigInt>> {
    let t = g.torsion.len();
    (0..g.free_rank).map(|i| g.projection.row(t + i)).collect()
}

/// Row-style Hermite normal form of a full-rank set of integer rows:
/// pivots positive and strictly increasing in column, entries above each
/// pivot reduced into `[0, pivot)`.
fn hermite_rows(mut rows: Vec<Vec<BigInt>>, width: usize) -> Vec<Vec<BigInt>> {
    let mut pivot_row = 0;
    for col in 0..width {
        if pivot_row >= rows.len() {
            break;
        }
        loop {
            // Euclid on the column below pivot_row.
            let nonzero: Vec<usize> = (pivot_row..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let min = *nonzero.iter().min_by_key(|&&r| rows[r][col].abs()).unwrap();
            rows.swap(pivot_row, min);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let qt = rows[r][col].div_floor(&rows[pivot_row][col]);
                for k in 0..width {
                    let sub = &qt * &rows[pivot_row][k];
                    rows[r][k] -= sub;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col].is_zero() {
            continue;
        }
        if rows[pivot_row][col].is_negative() {
            for v in rows[pivot_row].iter_mut() {
                *v = -v.clone();
            }
        }
        for r in 0..pivot_row {
            let qt = rows[r][col].div_floor(&rows[pivot_row][col]);
            if !qt.is_zero() {
                for k in 0..width {
                    let sub = &qt * &rows[pivot_row][k];
                    rows[r][k] -= sub;
                }
            }
        }
        pivot_row += 1;
    }
    rows
}

/// Convenience for callers working in machine integers.
pub fn to_i64_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::RationalMatrix;

/// Bases of the kernel and the column space of a rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelImage {
    pub kernel: Vec<Vec<BigRational>>,
    pub image: Vec<Vec<BigRational>>,
}

/// Reduced row echelon form and pivot columns.
pub fn rref(a: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !r[(i, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..cols {
                let tmp = r[(p, j)].clone();
                r[(p, j)] = r[(row, j)].clone();
                r[(row, j)] = tmp;
            }
        }
        let pivot = r[(row, col)].clone();
        for j in col..cols {
            r[(row, j)] = &r[(row, j)] / &pivot;
        }
        for i in 0..rows {
            if i == row || r[(i, col)].is_zero() {
                continue;
            }
            let f = r[(i, col)].clone();
            for j in col..cols {
                let v = &r[(row, j)] * &f;
                r[(i, j)] -= v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (r, pivots)
}

pub fn rank(a: &RationalMatrix) -> usize {
    rref(a).1.len()
}

/// Exact bases of `ker(a)` and `im(a)`; their sizes add up to the column count.
///
/// The image basis consists of the pivot columns of `a` itself; the kernel
/// basis has one vector per free column.
pub fn kernel_and_image(a: &RationalMatrix) -> KernelImage {
    let (r, pivots) = rref(a);
    let cols = a.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::from_integer(1.into());
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        })
        .collect();
    let image = pivots.iter().map(|&p| a.column(p)).collect();
    KernelImage { kernel, image }
}

/// Coordinates of `v` in the (linearly independent) `basis`, if `v` lies in its span.
pub fn coordinates(basis: &[Vec<BigRational>], v: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = v.len();
    let k = basis.len();
    // Augmented system [basis | v].
    let aug = RationalMatrix::from_fn(n, k + 1, |i, j| if j < k { basis[j][i].clone() } else { v[i].clone() });
    let (r, pivots) = rref(&aug);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, k)].clone();
    }
    Some(x)
}

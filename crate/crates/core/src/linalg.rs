//! Determinant of a small dense square matrix.

/// Determinant by Gaussian elimination with partial pivoting.
///
/// `rows` must be square; an empty matrix has determinant 1.
pub fn determinant(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    match n {
        0 => return 1.0,
        1 => return rows[0][0],
        2 => return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        _ => {}
    }

    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap_or(col);
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for r in (col + 1)..n {
            let factor = m[r][col] / p;
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                m[r][c] -= factor * m[col][c];
            }
        }
    }
    det
}

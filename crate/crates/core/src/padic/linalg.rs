use super::number::Padic;

/// Characteristic polynomial `det(x I - A)` of a square matrix over `Q_p`,
/// lowest degree first (monic). Division-free (Berkowitz).
pub fn charpoly(a: &[Vec<Padic>], one: &Padic) -> Vec<Padic> {
    let n = a.len();
    let p = one.p();
    let zero = Padic::exact_zero(p);
    if n == 0 {
        return vec![one.clone()];
    }
    // coefficients highest degree first
    let mut c: Vec<Padic> = vec![one.clone(), -&a[0][0]];
    for r in 1..n {
        // column S = a[0..r][r], row R = a[r][0..r]
        let s: Vec<Padic> = (0..r).map(|i| a[i][r].clone()).collect();
        let row: Vec<Padic> = (0..r).map(|j| a[r][j].clone()).collect();
        let mut col = Vec::with_capacity(r + 2);
        col.push(one.clone());
        col.push(-&a[r][r]);
        let mut v = s.clone();
        for _ in 0..r {
            let dot = row.iter().zip(&v).fold(zero.clone(), |acc, (x, y)| &acc + &(x * y));
            col.push(-dot);
            v = (0..r)
                .map(|i| (0..r).fold(zero.clone(), |acc, j| &acc + &(&a[i][j] * &v[j])))
                .collect();
        }
        // Toeplitz (r+2) x (r+1) lower triangular with first column `col`
        let next: Vec<Padic> = (0..r + 2)
            .map(|i| {
                (0..=r.min(i)).fold(zero.clone(), |acc, j| {
                    if i - j < col.len() && j < c.len() {
                        &acc + &(&col[i - j] * &c[j])
                    } else {
                        acc
                    }
                })
            })
            .collect();
        c = next;
    }
    c.reverse();
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Padic>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Padic::from_int(7, x, 30)).collect())
            .collect()
    }

    fn ints(c: &[Padic]) -> Vec<i64> {
        use num_traits::ToPrimitive;
        let modulus = num_bigint::BigInt::from(7i64).pow(30);
        c.iter()
            .map(|x| {
                let r = super::super::number::balanced(&x.representative().unwrap(), &modulus);
                r.to_i64().unwrap()
            })
            .collect()
    }

    #[test]
    fn companion_and_triangular() {
        let one = Padic::from_int(7, 1, 30);
        // companion matrix of x^3 - 2x + 5
        let a = m(&[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(ints(&charpoly(&a, &one)), vec![5, -2, 0, 1]);
        let b = m(&[&[2, 3, 1], &[0, -1, 4], &[0, 0, 3]]);
        // (x-2)(x+1)(x-3) = x^3 - 4x^2 + x + 6
        assert_eq!(ints(&charpoly(&b, &one)), vec![6, 1, -4, 1]);
        let c = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(ints(&charpoly(&c, &one)), vec![-2, -5, 1]);
    }
}

//! Finite fields `F_q = F_p[y]/(g)` and polynomials over them.
//!
//! Elements are coefficient vectors in `y` of length `f`, lowest degree first.
//! Polynomials over `F_q` are vectors of elements, lowest degree first, kept
//! without trailing zeros (the zero polynomial is the empty vector).

pub type Fq = Vec<u64>;
pub type FqPoly = Vec<Fq>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueField {
    p: u64,
    f: usize,
    modulus: Vec<u64>,
}

fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// The lexicographically smallest monic irreducible polynomial of degree `f`
/// over `F_p`, comparing `[a_{f-1}, ..., a_0]`. Returned lowest degree first.
pub fn smallest_irreducible(p: u64, f: usize) -> Vec<u64> {
    assert!(f >= 1);
    if f == 1 {
        return vec![0, 1];
    }
    let fp = ResidueField::prime(p);
    let total = p.checked_pow(f as u32).expect("residue degree too large");
    for idx in 0..total {
        let mut g = Vec::with_capacity(f + 1);
        let mut n = idx;
        for _ in 0..f {
            g.push(n % p);
            n /= p;
        }
        g.push(1);
        if g[0] == 0 {
            continue;
        }
        let poly: FqPoly = g.iter().map(|&c| vec![c]).collect();
        if fp.is_irreducible(&poly) {
            return g;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl ResidueField {
    pub fn prime(p: u64) -> Self {
        ResidueField { p, f: 1, modulus: vec![0, 1] }
    }

    /// `F_{p^f}` presented by [`smallest_irreducible`].
    pub fn new(p: u64, f: usize) -> Self {
        ResidueField { p, f, modulus: smallest_irreducible(p, f) }
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Self {
        let f = modulus.len() - 1;
        ResidueField { p, f, modulus }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    pub fn zero(&self) -> Fq {
        vec![0; self.f]
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> Fq {
        let mut v = self.zero();
        v[0] = c % self.p;
        v
    }

    pub fn from_i64(&self, c: i64) -> Fq {
        self.from_u64(c.rem_euclid(self.p as i64) as u64)
    }

    /// The class of `y`.
    pub fn generator(&self) -> Fq {
        if self.f == 1 {
            return self.from_u64(0);
        }
        let mut v = self.zero();
        v[1] = 1;
        v
    }

    /// Enumeration of all `q` elements by base-`p` digits.
    pub fn element(&self, mut idx: u64) -> Fq {
        let mut v = self.zero();
        for c in v.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        v
    }

    pub fn index_of(&self, a: &Fq) -> u64 {
        a.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn is_zero(&self, a: &Fq) -> bool {
        is_zero(a)
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.p as u128;
        let mut prod = vec![0u128; 2 * self.f - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for k in (self.f..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus.iter().enumerate().take(self.f) {
                let idx = k - self.f + j;
                prod[idx] = (prod[idx] + (p - c) * m as u128) % p;
            }
            prod[k] = 0;
        }
        prod.truncate(self.f);
        prod.into_iter().map(|c| c as u64).collect()
    }

    pub fn pow(&self, a: &Fq, mut e: u64) -> Fq {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, a: &Fq) -> Option<Fq> {
        if is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }

    pub fn frobenius(&self, a: &Fq) -> Fq {
        self.pow(a, self.p)
    }

    // ----- polynomials over F_q -----

    pub fn poly_trim(&self, mut a: FqPoly) -> FqPoly {
        while a.last().is_some_and(|c| is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn poly_degree(&self, a: &FqPoly) -> Option<usize> {
        if a.is_empty() {
            None
        } else {
            Some(a.len() - 1)
        }
    }

    pub fn poly_x(&self) -> FqPoly {
        vec![self.zero(), self.one()]
    }

    pub fn poly_add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        let out = (0..n)
            .map(|i| self.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.poly_trim(out)
    }

    pub fn poly_sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        let out = (0..n)
            .map(|i| self.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.poly_trim(out)
    }

    pub fn poly_mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.poly_trim(out)
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn poly_divrem(&self, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
        let db = b.len() - 1;
        let lead_inv = self.inv(&b[db]).expect("nonzero divisor");
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![self.zero(); r.len() - db];
        for k in (db..r.len()).rev() {
            let c = self.mul(&r[k], &lead_inv);
            if is_zero(&c) {
                continue;
            }
            q[k - db] = c.clone();
            for (j, bj) in b.iter().enumerate() {
                let idx = k - db + j;
                r[idx] = self.sub(&r[idx], &self.mul(&c, bj));
            }
        }
        r.truncate(db);
        (self.poly_trim(q), self.poly_trim(r))
    }

    pub fn poly_rem(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.poly_divrem(a, b).1
    }

    pub fn poly_monic(&self, a: &FqPoly) -> FqPoly {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let li = self.inv(l).unwrap();
                a.iter().map(|c| self.mul(c, &li)).collect()
            }
        }
    }

    pub fn poly_gcd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let mut x = self.poly_trim(a.clone());
        let mut y = self.poly_trim(b.clone());
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    pub fn poly_powmod(&self, base: &FqPoly, mut e: u64, m: &FqPoly) -> FqPoly {
        let mut b = self.poly_rem(base, m);
        let mut acc = self.poly_rem(&vec![self.one()], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = self.poly_rem(&self.poly_mul(&b, &b), m);
            }
        }
        acc
    }

    pub fn poly_eval(&self, a: &FqPoly, x: &Fq) -> Fq {
        a.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    pub fn poly_derivative(&self, a: &FqPoly) -> FqPoly {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.mul(c, &self.from_u64(i as u64)))
            .collect();
        self.poly_trim(out)
    }

    /// Ben-Or irreducibility test.
    pub fn is_irreducible(&self, a: &FqPoly) -> bool {
        let a = self.poly_trim(a.clone());
        let d = match self.poly_degree(&a) {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let x = self.poly_x();
        let q = self.order();
        let mut h = self.poly_rem(&x, &a);
        for _ in 1..=d / 2 {
            h = self.poly_powmod(&h, q, &a);
            let g = self.poly_gcd(&a, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Degrees of the distinct irreducible factors of `a` (ascending, each
    /// degree listed once).
    pub fn factor_degrees(&self, a: &FqPoly) -> Vec<usize> {
        let mut rest = self.poly_monic(&self.poly_trim(a.clone()));
        let x = self.poly_x();
        let q = self.order();
        let mut out = Vec::new();
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            h = self.poly_powmod(&h, q, &rest);
            let g = self.poly_gcd(&rest, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                out.push(d);
                loop {
                    let c = self.poly_gcd(&rest, &g);
                    if c.len() <= 1 {
                        break;
                    }
                    rest = self.poly_divrem(&rest, &c).0;
                }
                h = self.poly_rem(&h, &rest);
            }
        }
        out
    }

    /// Roots in `F_q` with multiplicities, ordered by [`Self::index_of`].
    pub fn roots(&self, a: &FqPoly) -> Vec<(Fq, usize)> {
        let a = self.poly_trim(a.clone());
        if a.len() <= 1 {
            return Vec::new();
        }
        let q = self.order();
        let x = self.poly_x();
        let split = self.poly_gcd(&a, &self.poly_sub(&self.poly_powmod(&x, q, &a), &x));
        let mut out = Vec::new();
        if split.len() <= 1 {
            return out;
        }
        let n = split.len() - 1;
        for idx in 0..q {
            let r = self.element(idx);
            if !is_zero(&self.poly_eval(&split, &r)) {
                continue;
            }
            let lin = vec![self.neg(&r), self.one()];
            let mut m = 0;
            let mut cur = a.clone();
            loop {
                let (qq, rr) = self.poly_divrem(&cur, &lin);
                if !rr.is_empty() {
                    break;
                }
                m += 1;
                cur = qq;
            }
            out.push((r, m));
            if out.len() == n {
                break;
            }
        }
        out
    }
}

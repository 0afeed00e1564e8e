//! Univariate polynomials over a [`Scalar`], constant coefficient first.
//!
//! Only what the Fitting decomposition needs: gcd, modular powers and root
//! finding over prime fields (Cantor-Zassenhaus equal-degree splitting).

use rand::Rng;

use crate::field::Scalar;

pub type Poly<S> = Vec<S>;

pub fn trim<S: Scalar>(mut p: Poly<S>) -> Poly<S> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree<S: Scalar>(p: &[S]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn monic<S: Scalar>(p: Poly<S>) -> Poly<S> {
    let p = trim(p);
    match p.last() {
        Some(lead) => {
            let inv = lead.inv().expect("nonzero leading coefficient");
            p.into_iter().map(|c| c * inv.clone()).collect()
        }
        None => p,
    }
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Poly<S> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(S::zero);
            let y = b.get(i).cloned().unwrap_or_else(S::zero);
            x - y
        })
        .collect();
    trim(out)
}

pub fn mul<S: Scalar>(a: &[S], b: &[S]) -> Poly<S> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(out)
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn div_rem<S: Scalar>(a: &[S], b: &[S]) -> (Poly<S>, Poly<S>) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by the zero polynomial");
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    let mut q = vec![S::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone() * lead_inv.clone();
        let shift = dr - db;
        q[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - c.clone() * bc.clone();
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem<S: Scalar>(a: &[S], b: &[S]) -> Poly<S> {
    div_rem(a, b).1
}

pub fn gcd<S: Scalar>(a: &[S], b: &[S]) -> Poly<S> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// `base^e mod modulus`.
pub fn pow_mod<S: Scalar>(base: &[S], mut e: u64, modulus: &[S]) -> Poly<S> {
    let mut acc = rem(&[S::one()], modulus);
    let mut b = rem(base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b), modulus);
        }
        b = rem(&mul(&b, &b), modulus);
        e >>= 1;
    }
    acc
}

/// Distinct roots in the prime field of `p`. Returns an empty list over
/// fields of characteristic zero or two.
pub fn roots<S: Scalar, R: Rng>(p: &[S], rng: &mut R) -> Vec<S> {
    let q = S::characteristic();
    if q <= 2 {
        return Vec::new();
    }
    let f = monic(p.to_vec());
    let Some(d) = degree(&f) else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    // g = gcd(f, x^q - x) is the product of the distinct linear factors.
    let x = vec![S::zero(), S::one()];
    let xq = pow_mod(&x, q, &f);
    let g = gcd(&f, &sub(&xq, &x));
    let mut out = Vec::new();
    split_linear(&g, q, rng, &mut out);
    out
}

fn split_linear<S: Scalar, R: Rng>(g: &[S], q: u64, rng: &mut R, out: &mut Vec<S>) {
    match degree(g) {
        None | Some(0) => {}
        Some(1) => out.push(-g[0].clone() * g[1].inv().expect("monic")),
        Some(d) => loop {
            let a = S::from_i64(rng.gen_range(0..i64::MAX) % q as i64);
            let shifted = vec![a, S::one()];
            let h = sub(&pow_mod(&shifted, (q - 1) / 2, g), &[S::one()]);
            let h = gcd(g, &h);
            if let Some(dh) = degree(&h) {
                if dh > 0 && dh < d {
                    let (other, _) = div_rem(g, &h);
                    split_linear(&h, q, rng, out);
                    split_linear(&monic(other), q, rng, out);
                    return;
                }
            }
        },
    }
}

pub fn eval<S: Scalar>(p: &[S], x: &S) -> S {
    p.iter()
        .rev()
        .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Multiplicity of the root `r` in `p`.
pub fn root_multiplicity<S: Scalar>(p: &[S], r: &S) -> usize {
    let lin = vec![-r.clone(), S::one()];
    let mut p = trim(p.to_vec());
    let mut k = 0;
    while degree(&p).is_some_and(|d| d > 0) && eval(&p, r).is_zero() {
        p = div_rem(&p, &lin).0;
        k += 1;
    }
    k
}

pub fn is_one<S: Scalar>(p: &[S]) -> bool {
    let p = trim(p.to_vec());
    p.len() == 1 && p[0].is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::F32003;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(c: &[i64]) -> Poly<F32003> {
        c.iter().map(|&v| F32003::from_i64(v)).collect()
    }

    #[test]
    fn roots_of_split_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x-1)(x-2)(x-5)^2 (x^2+1 has roots mod 32003? 32003 = 3 mod 4, so no)
        let f = mul(
            &mul(&poly(&[-1, 1]), &poly(&[-2, 1])),
            &mul(&mul(&poly(&[-5, 1]), &poly(&[-5, 1])), &poly(&[1, 0, 1])),
        );
        let mut r: Vec<u64> = roots(&f, &mut rng).into_iter().map(|x| x.value()).collect();
        r.sort();
        assert_eq!(r, vec![1, 2, 5]);
        assert_eq!(root_multiplicity(&f, &F32003::from_i64(5)), 2);
    }

    #[test]
    fn irreducible_has_no_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(roots(&poly(&[1, 0, 1]), &mut rng).is_empty());
    }

    #[test]
    fn gcd_and_division() {
        let a = mul(&poly(&[-1, 1]), &poly(&[-3, 1]));
        let b = mul(&poly(&[-1, 1]), &poly(&[4, 1]));
        assert_eq!(gcd(&a, &b), poly(&[-1, 1]));
        let (q, r) = div_rem(&a, &poly(&[-3, 1]));
        assert_eq!(q, poly(&[-1, 1]));
        assert!(r.is_empty());
    }
}

use super::number::{Padic, Valuation};
use super::poly::PadicPolynomial;
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 128;

/// Newton iteration from `r0` to a root of `f` known modulo `p^target`.
///
/// Requires `v(f(r0)) > 2 v(f'(r0))`. The returned value carries absolute
/// precision `target` and agrees with the unique nearby root to that many
/// digits.
pub fn hensel_lift(f: &PadicPolynomial, r0: &Padic, target: i64) -> Result<Padic> {
    let df = f.derivative()?;
    let k = match df.eval(r0).valuation() {
        Ok(Valuation::Finite(k)) => k,
        _ => {
            return Err(Error::HenselConditionFailed(
                "derivative vanishes at the starting point".into(),
            ))
        }
    };
    let f0 = f.eval(r0);
    if !(f0.is_exact_zero() || f0.val_lower_bound() > 2 * k) {
        return Err(Error::HenselConditionFailed(format!(
            "v(f(r0)) = {} is not larger than 2 v(f'(r0)) = {}",
            f0.val_lower_bound(),
            2 * k
        )));
    }
    let need = target + k;
    let work = f
        .coeffs()
        .iter()
        .filter_map(Padic::precision)
        .min()
        .unwrap_or(need + 1);
    if work < need {
        return Err(Error::PrecisionExhausted(format!(
            "coefficients known to {work} digits, {need} needed"
        )));
    }
    let mut r = r0.lift_to(work);
    for _ in 0..MAX_ITERATIONS {
        let fr = f.eval(&r);
        if fr.is_exact_zero() || fr.val_lower_bound() >= need {
            return Ok(r.truncate(target));
        }
        if fr.is_indeterminate() {
            break;
        }
        let step = fr.checked_div(&df.eval(&r))?;
        r = (&r - &step).lift_to(work);
    }
    Err(Error::PrecisionExhausted("Newton iteration did not reach the target".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn sqrt6_mod_625() {
        let f = PadicPolynomial::from_ints(5, &[-6, 0, 1], 30).unwrap();
        let r = hensel_lift(&f, &Padic::from_int(5, 1, 30), 4).unwrap();
        assert_eq!(r.representative().unwrap(), BigInt::from(516));
        assert_eq!(r.precision(), Some(4));
    }

    #[test]
    fn linear_root_is_immediate() {
        let f = PadicPolynomial::from_ints(5, &[-3, 1], 30).unwrap();
        for t in [1, 5, 20] {
            let r = hensel_lift(&f, &Padic::from_int(5, 3, 30), t).unwrap();
            assert_eq!(r.representative().unwrap(), BigInt::from(3));
        }
    }

    #[test]
    fn ramified_root_fails() {
        let f = PadicPolynomial::from_ints(5, &[-5, 0, 1], 30).unwrap();
        assert!(matches!(
            hensel_lift(&f, &Padic::exact_zero(5), 4),
            Err(Error::HenselConditionFailed(_))
        ));
    }

    #[test]
    fn insufficient_input_digits() {
        let f = PadicPolynomial::from_ints(5, &[-6, 0, 1], 3).unwrap();
        assert!(matches!(
            hensel_lift(&f, &Padic::from_int(5, 1, 3), 10),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn nonunit_derivative_start() {
        // x^2 + 7 over Q_2: r0 = 1 has f(1) = 8, f'(1) = 2, 3 > 2
        let f = PadicPolynomial::from_ints(2, &[7, 0, 1], 40).unwrap();
        let r = hensel_lift(&f, &Padic::from_int(2, 1, 40), 20).unwrap();
        let rep = r.representative().unwrap();
        let m = BigInt::from(1u64 << 20);
        assert_eq!((&rep * &rep + 7) % m, BigInt::from(0));
    }
}

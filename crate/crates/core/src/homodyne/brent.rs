//! Brent's bracketing root finder.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrentOptions {
    /// Stop once the bracket is narrower than this.
    pub xtol: f64,
    /// Stop once `|f(x)|` is at most this.
    pub ftol: f64,
    pub max_iter: usize,
}

impl Default for BrentOptions {
    fn default() -> Self {
        Self {
            xtol: 1e-12,
            ftol: 1e-10,
            max_iter: 200,
        }
    }
}

/// Finds a root of `f` in `[a, b]`, where `f(a)` and `f(b)` must not share
/// a sign. Combines inverse quadratic interpolation, secant steps and
/// bisection; the bracket shrinks every iteration, so convergence is
/// guaranteed.
pub fn brent<F>(mut f: F, a: f64, b: f64, opts: BrentOptions) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut xpre, mut xcur) = (a, b);
    let (mut fpre, mut fcur) = (f(xpre), f(xcur));
    if fpre == 0.0 {
        return Ok(xpre);
    }
    if fcur == 0.0 {
        return Ok(xcur);
    }
    if fpre.signum() == fcur.signum() {
        return Err(Error::PathologicalDistribution(format!(
            "root not bracketed: f({a}) = {fpre:e}, f({b}) = {fcur:e}"
        )));
    }
    let (mut xblk, mut fblk) = (0.0, 0.0);
    let (mut spre, mut scur) = (0.0f64, 0.0f64);

    for _ in 0..opts.max_iter {
        if fpre != 0.0 && fcur != 0.0 && fpre.signum() != fcur.signum() {
            xblk = xpre;
            fblk = fpre;
            spre = xcur - xpre;
            scur = spre;
        }
        if fblk.abs() < fcur.abs() {
            xpre = xcur;
            xcur = xblk;
            xblk = xpre;
            fpre = fcur;
            fcur = fblk;
            fblk = fpre;
        }

        let delta = opts.xtol / 2.0;
        let sbis = (xblk - xcur) / 2.0;
        if fcur.abs() <= opts.ftol || sbis.abs() < delta {
            return Ok(xcur);
        }

        if spre.abs() > delta && fcur.abs() < fpre.abs() {
            let stry = if xpre == xblk {
                // secant
                -fcur * (xcur - xpre) / (fcur - fpre)
            } else {
                // inverse quadratic
                let dpre = (fpre - fcur) / (xpre - xcur);
                let dblk = (fblk - fcur) / (xblk - xcur);
                -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            };
            if 2.0 * stry.abs() < spre.abs().min(3.0 * sbis.abs() - delta) {
                spre = scur;
                scur = stry;
            } else {
                spre = sbis;
                scur = sbis;
            }
        } else {
            spre = sbis;
            scur = sbis;
        }

        xpre = xcur;
        fpre = fcur;
        if scur.abs() > delta {
            xcur += scur;
        } else {
            xcur += if sbis > 0.0 { delta } else { -delta };
        }
        fcur = f(xcur);
    }
    Err(Error::PathologicalDistribution(format!(
        "Brent iteration did not converge in {} steps",
        opts.max_iter
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_root() {
        let x = brent(|x| x * x * x - 2.0, 0.0, 3.0, BrentOptions::default()).unwrap();
        assert!((x - 2f64.cbrt()).abs() < 1e-10);
    }

    #[test]
    fn flat_region_still_converges() {
        // Step-like function: bisection fallback keeps the bracket shrinking.
        let opts = BrentOptions {
            ftol: 0.0,
            ..BrentOptions::default()
        };
        let x = brent(|x| (50.0 * (x - 0.3)).tanh(), -10.0, 10.0, opts).unwrap();
        assert!((x - 0.3).abs() < 1e-11);
    }

    #[test]
    fn unbracketed() {
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, BrentOptions::default()).is_err());
    }
}

use std::fmt;

use crate::error::Result;
use crate::qfunctions::{eisenstein, theta, theta_deriv};
use crate::rational::{ratio, ExactRational};
use crate::series::QSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaWhich {
    /// `θ_{1,5}`, conjugated by `q^{1/40}`.
    Theta15,
    /// `θ_{3,5}`, conjugated by `q^{9/40}`.
    Theta35,
}

impl ThetaWhich {
    pub const ALL: [ThetaWhich; 2] = [ThetaWhich::Theta15, ThetaWhich::Theta35];

    pub fn alpha(self) -> ExactRational {
        match self {
            ThetaWhich::Theta15 => ratio(1, 40),
            ThetaWhich::Theta35 => ratio(9, 40),
        }
    }

    fn a(self) -> i64 {
        match self {
            ThetaWhich::Theta15 => 1,
            ThetaWhich::Theta35 => 3,
        }
    }
}

impl fmt::Display for ThetaWhich {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThetaWhich::Theta15 => "theta_1,5",
            ThetaWhich::Theta35 => "theta_3,5",
        })
    }
}

/// Which algebraic form of the operator is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OdeForm {
    /// `(D + α + 5G_2)(D + α + G_2)θ`
    Factored,
    /// `(1/4)θ^{[2]} + (α + 3G_2)θ^{[1]} + (α² + 6αG_2 + 5G_2² + DG_2)θ`
    Expanded,
}

/// The operator applied to `θ` minus `(11/15) G_4 θ`; zero when the ODE holds.
pub fn theta_ode_residual(which: ThetaWhich, order: usize, form: OdeForm) -> Result<QSeries> {
    let a = which.a();
    let alpha = which.alpha();
    let t = theta(a, 5, order)?;
    let g2 = eisenstein(2, order)?;
    let g4 = eisenstein(4, order)?;
    let lhs = match form {
        OdeForm::Factored => {
            let u = &(&t.d() + &t.scale(&alpha)) + &(&g2 * &t);
            &(&u.d() + &u.scale(&alpha)) + &(&g2 * &u).scale(&ratio(5, 1))
        }
        OdeForm::Expanded => {
            let t1 = theta_deriv(a, 5, 1, order)?;
            let t2 = theta_deriv(a, 5, 2, order)?;
            let mut c1 = g2.scale(&ratio(3, 1));
            c1.add_at(0, &alpha);
            let mut c0 = &(&g2 * &g2).scale(&ratio(5, 1)) + &g2.d();
            c0 = &c0 + &g2.scale(&(&alpha * ratio(6, 1)));
            c0.add_at(0, &(&alpha * &alpha));
            &(&t2.scale(&ratio(1, 4)) + &(&c1 * &t1)) + &(&c0 * &t)
        }
    };
    Ok(&lhs - &(&g4 * &t).scale(&ratio(11, 15)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishes() {
        for which in ThetaWhich::ALL {
            for form in [OdeForm::Factored, OdeForm::Expanded] {
                assert!(theta_ode_residual(which, 30, form).unwrap().is_zero(), "{which} {form:?}");
            }
        }
    }

    #[test]
    fn constant_term_by_hand() {
        // α² + 6α(-1/24) + 5/576 - (11/15)(1/240) at q^0
        for which in ThetaWhich::ALL {
            let a = which.alpha();
            let c = &a * &a - &a * ratio(1, 4) + ratio(5, 576) - ratio(11, 3600);
            assert_eq!(c, ratio(0, 1), "{which}");
        }
    }

    #[test]
    fn wrong_alpha_fails() {
        let t = theta(1, 5, 10).unwrap();
        let g2 = eisenstein(2, 10).unwrap();
        let g4 = eisenstein(4, 10).unwrap();
        let alpha = ratio(9, 40);
        let u = &(&t.d() + &t.scale(&alpha)) + &(&g2 * &t);
        let lhs = &(&u.d() + &u.scale(&alpha)) + &(&g2 * &u).scale(&ratio(5, 1));
        assert!(!(&lhs - &(&g4 * &t).scale(&ratio(11, 15))).is_zero());
    }
}

//! Named one-variable q-series: Bernoulli data, Eisenstein and theta
//! series, divisor-like sums, k-rank and crank moments.

pub mod bernoulli;
pub mod divisor;
pub mod eisenstein;
pub mod moments;
pub mod multisum;
pub mod theta;

pub use bernoulli::{bernoulli, bernoulli_poly, BernoulliTable};
pub use divisor::divisor_like_g;
pub use eisenstein::eisenstein;
pub use moments::{
    crank_moment, krank_count_series, rank_moment, MomentMethod, MomentSeries,
};
pub use multisum::fgk_multisum;
pub use theta::{theta, theta_deriv};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RewardError {
    #[error("step {t} exceeds the step budget {t_max}")]
    PastBudget { t: u32, t_max: u32 },
    #[error("step budget must be positive")]
    ZeroBudget,
}

/// Elapsed steps `t` against the episode budget `t_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RewardParams {
    pub t: u32,
    pub t_max: u32,
}

/// Success reward discounted linearly from 1.0 (instant) to 0.1 (at `t_max`).
pub fn extrinsic_reward<F: Scalar>(p: RewardParams) -> Result<F, RewardError> {
    if p.t_max == 0 {
        return Err(RewardError::ZeroBudget);
    }
    if p.t > p.t_max {
        return Err(RewardError::PastBudget {
            t: p.t,
            t_max: p.t_max,
        });
    }
    let frac = F::from_count(p.t) / F::from_count(p.t_max);
    Ok(F::one() - F::lit(0.9) * frac)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(t: u32, t_max: u32) -> f64 {
        extrinsic_reward(RewardParams { t, t_max }).unwrap()
    }

    #[test]
    fn reference_points() {
        assert!((r(10, 100) - 0.91).abs() < 1e-12);
        assert!((r(100, 100) - 0.1).abs() < 1e-12);
        assert_eq!(r(0, 20), 1.0);
        let single: f32 = extrinsic_reward(RewardParams { t: 5, t_max: 20 }).unwrap();
        assert!((single - 0.775).abs() < 1e-6);
    }

    #[test]
    fn past_budget_is_rejected() {
        assert_eq!(
            extrinsic_reward::<f64>(RewardParams { t: 21, t_max: 20 }),
            Err(RewardError::PastBudget { t: 21, t_max: 20 })
        );
        assert_eq!(
            extrinsic_reward::<f64>(RewardParams { t: 0, t_max: 0 }),
            Err(RewardError::ZeroBudget)
        );
    }

    #[test]
    fn strictly_decreasing_within_range() {
        for t_max in [20u32, 50, 100] {
            let mut prev = f64::INFINITY;
            for t in 0..=t_max {
                let v = r(t, t_max);
                assert!(v < prev && (0.1 - 1e-12..=1.0).contains(&v));
                prev = v;
            }
        }
    }
}

//! Which component a pole of a system is attributed to.

use crate::error::{Error, Result};
use crate::series::SystemOfSeries;

/// Distance within which `a` is identified with a reference pole.
pub const POLE_TOL: f64 = 1e-9;

/// `k(a)` (zero-based): among the components with a pole of maximal order
/// `τ` at `a` and `|a| < R*_k`, the one with the greatest `R*`, then the
/// lowest index. When no such component has `a` inside its `D*`, the rule
/// runs over all components of order `τ`.
pub fn assign_k(system: &SystemOfSeries, rstars: &[f64], a: (f64, f64)) -> Result<usize> {
    if rstars.len() != system.len() {
        return Err(Error::Degrees(format!("{} radius estimates for {} components", rstars.len(), system.len())));
    }
    let orders: Vec<usize> =
        system.components().iter().map(|f| f.analytics().pole_order_at(a.0, a.1, POLE_TOL)).collect();
    let tau = orders.iter().copied().max().unwrap_or(0);
    if tau == 0 {
        return Err(Error::NotAPole(format!("{} + {}i", a.0, a.1)));
    }
    let modulus = a.0.hypot(a.1);
    let full: Vec<usize> = (0..orders.len()).filter(|&k| orders[k] == tau).collect();
    let inside: Vec<usize> = full.iter().copied().filter(|&k| modulus < rstars[k]).collect();
    let pool = if inside.is_empty() { full } else { inside };
    let best = pool
        .into_iter()
        .fold(None::<usize>, |best, k| match best {
            Some(b) if rstars[b] >= rstars[k] => Some(b),
            _ => Some(k),
        })
        .expect("τ > 0");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Context, Gauss, Polynomial};
    use crate::series::{catalog, PowerSeries};
    use std::collections::BTreeMap;

    #[test]
    fn f1f2_poles() {
        let sys = catalog("5.2-f1f2", &BTreeMap::new()).unwrap();
        let r = [2.0, f64::INFINITY];
        assert_eq!(assign_k(&sys, &r, (3.0, 0.0)).unwrap(), 1);
        assert_eq!(assign_k(&sys, &r, (1.0, 0.0)).unwrap(), 0);
        assert!(matches!(assign_k(&sys, &r, (5.0, 0.0)), Err(Error::NotAPole(_))));
    }

    #[test]
    fn larger_radius_wins_ties() {
        let ctx = Context::default();
        let pole = |extra: i64| {
            PowerSeries::rational(
                Polynomial::new(vec![Gauss::one()], &ctx),
                Polynomial::new(vec![Gauss::one(), -Gauss::one()], &ctx),
            )
            .unwrap()
            .add(
                &PowerSeries::rational(
                    Polynomial::new(vec![Gauss::one()], &ctx),
                    Polynomial::new(vec![Gauss::from_i64(extra), -Gauss::one()], &ctx),
                )
                .unwrap(),
            )
        };
        let sys = SystemOfSeries::new(vec![pole(3), pole(5)]).unwrap();
        assert_eq!(assign_k(&sys, &[3.0, 5.0], (1.0, 0.0)).unwrap(), 1);
        assert_eq!(assign_k(&sys, &[4.0, 4.0], (1.0, 0.0)).unwrap(), 0);
        assert!(assign_k(&sys, &[4.0], (1.0, 0.0)).is_err());
    }
}

use alloc::vec::Vec;

use super::DesignPoint;

/// Objective with its preferred direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// pJ per transform, lower is better.
    EnergyEff,
    /// mm² per GT/s, lower is better. Unknown area counts as worst.
    AreaEff,
    /// dB, higher is better.
    OutputSnr,
}

impl Objective {
    pub const ALL: [Objective; 3] = [Objective::EnergyEff, Objective::AreaEff, Objective::OutputSnr];

    /// Value oriented so that smaller is better.
    fn cost(&self, p: &DesignPoint) -> f64 {
        match self {
            Objective::EnergyEff => p.energy_eff_pj,
            Objective::AreaEff => p.area_eff.unwrap_or(f64::INFINITY),
            Objective::OutputSnr => -p.output_snr_db,
        }
    }
}

/// `a` is no worse than `b` in every objective and better in at least one.
pub fn dominates(a: &DesignPoint, b: &DesignPoint, objectives: &[Objective]) -> bool {
    let mut strictly = false;
    for o in objectives {
        let (ca, cb) = (o.cost(a), o.cost(b));
        if ca > cb {
            return false;
        }
        strictly |= ca < cb;
    }
    strictly
}

/// Indices of the non-dominated points, in input order.
///
/// Builds the front incrementally: a candidate is dropped if an archived
/// point dominates it, otherwise it evicts the archived points it dominates.
pub fn pareto_indices(points: &[DesignPoint], objectives: &[Objective]) -> Vec<usize> {
    let mut archive: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if archive.iter().any(|&j| dominates(&points[j], p, objectives)) {
            continue;
        }
        archive.retain(|&j| !dominates(p, &points[j], objectives));
        archive.push(i);
    }
    archive.sort_unstable();
    archive
}

/// Non-dominated subset of `points`, preserving input order.
pub fn pareto_front(points: &[DesignPoint], objectives: &[Objective]) -> Vec<DesignPoint> {
    pareto_indices(points, objectives).into_iter().map(|i| points[i].clone()).collect()
}

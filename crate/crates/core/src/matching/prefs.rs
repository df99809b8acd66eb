use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::config::ScenarioConfig;
use crate::evaluate::Matching;
use crate::matrix::Matrix;

/// Mutable preference lists and remaining quotas of both sides of the game.
///
/// Lists only ever shrink. An AP whose quota reaches zero disappears from
/// every UE's list and vice versa, so any AP still listed by a UE can accept
/// at least one more association.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceState {
    /// APs in decreasing order of preference, per UE.
    pub ue_prefs: Vec<Vec<usize>>,
    /// UEs in decreasing order of preference, per AP.
    pub ap_prefs: Vec<Vec<usize>>,
    pub ue_quota: Vec<usize>,
    pub ap_quota: Vec<usize>,
    /// Request pointer of each UE into its current list (zero-based).
    pub pointer: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssociateError {
    AlreadyAssociated { ue: usize, ap: usize },
    UeQuotaExhausted(usize),
    ApQuotaExhausted(usize),
}

impl fmt::Display for AssociateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AlreadyAssociated { ue, ap } => write!(f, "UE {ue} is already served by AP {ap}"),
            Self::UeQuotaExhausted(ue) => write!(f, "UE {ue} has no quota left"),
            Self::ApQuotaExhausted(ap) => write!(f, "AP {ap} has no quota left"),
        }
    }
}

impl core::error::Error for AssociateError {}

fn by_gain_desc(a: (usize, f64), b: (usize, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then(a.0.cmp(&b.0))
}

/// Both sides rank the other by channel gain, strongest first, ties to the
/// lower index.
pub fn build_preferences(gains: &Matrix<f64>, config: &ScenarioConfig) -> PreferenceState {
    let (k, m) = (gains.rows(), gains.cols());
    let ue_prefs = (0..k)
        .map(|ue| {
            if config.ap_quota == 0 {
                return Vec::new();
            }
            let mut order: Vec<(usize, f64)> = (0..m).map(|ap| (ap, gains[(ue, ap)])).collect();
            order.sort_by(|a, b| by_gain_desc(*a, *b));
            order.into_iter().map(|(ap, _)| ap).collect()
        })
        .collect();
    let ap_prefs = (0..m)
        .map(|ap| {
            if config.ue_quota == 0 {
                return Vec::new();
            }
            let mut order: Vec<(usize, f64)> = (0..k).map(|ue| (ue, gains[(ue, ap)])).collect();
            order.sort_by(|a, b| by_gain_desc(*a, *b));
            order.into_iter().map(|(ue, _)| ue).collect()
        })
        .collect();
    PreferenceState {
        ue_prefs,
        ap_prefs,
        ue_quota: alloc::vec![config.ue_quota; k],
        ap_quota: alloc::vec![config.ap_quota; m],
        pointer: alloc::vec![0; k],
    }
}

impl PreferenceState {
    pub fn num_ues(&self) -> usize {
        self.ue_prefs.len()
    }

    /// Whether `ue` sits among the first `q_m` entries of AP `ap`'s current list.
    pub fn in_quota_window(&self, ue: usize, ap: usize) -> bool {
        let window = self.ap_quota[ap].min(self.ap_prefs[ap].len());
        self.ap_prefs[ap][..window].contains(&ue)
    }

    /// Commits `(ue, ap)` and performs the list and quota bookkeeping.
    pub fn associate(&mut self, ue: usize, ap: usize, matching: &mut Matching) -> Result<(), AssociateError> {
        if matching.is_associated(ue, ap) {
            return Err(AssociateError::AlreadyAssociated { ue, ap });
        }
        if self.ue_quota[ue] == 0 {
            return Err(AssociateError::UeQuotaExhausted(ue));
        }
        if self.ap_quota[ap] == 0 {
            return Err(AssociateError::ApQuotaExhausted(ap));
        }
        matching.insert(ue, ap);
        self.ap_prefs[ap].retain(|&u| u != ue);
        self.ue_prefs[ue].retain(|&a| a != ap);
        self.ue_quota[ue] -= 1;
        self.ap_quota[ap] -= 1;
        if self.ap_quota[ap] == 0 {
            for list in &mut self.ue_prefs {
                list.retain(|&a| a != ap);
            }
        }
        if self.ue_quota[ue] == 0 {
            for list in &mut self.ap_prefs {
                list.retain(|&u| u != ue);
            }
        }
        Ok(())
    }

    /// Quota conservation and list consistency against `matching`.
    pub fn check_consistency(&self, matching: &Matching, config: &ScenarioConfig) -> Result<(), &'static str> {
        for ue in 0..matching.num_ues() {
            if self.ue_quota[ue] + matching.cluster(ue).len() != config.ue_quota {
                return Err("UE quota not conserved");
            }
            let list = &self.ue_prefs[ue];
            if list.iter().any(|&ap| self.ap_quota[ap] == 0) {
                return Err("saturated AP left in a UE list");
            }
            if list.iter().any(|&ap| matching.is_associated(ue, ap)) {
                return Err("serving AP left in its UE's list");
            }
            if (1..list.len()).any(|i| list[..i].contains(&list[i])) {
                return Err("duplicate AP in a UE list");
            }
        }
        for ap in 0..matching.num_aps() {
            if self.ap_quota[ap] + matching.load(ap).len() != config.ap_quota {
                return Err("AP quota not conserved");
            }
            let list = &self.ap_prefs[ap];
            if list.iter().any(|&ue| self.ue_quota[ue] == 0) {
                return Err("saturated UE left in an AP list");
            }
            if (1..list.len()).any(|i| list[..i].contains(&list[i])) {
                return Err("duplicate UE in an AP list");
            }
        }
        Ok(())
    }
}

use serde::{Deserialize, Serialize};

use crate::dynamics::DriveParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    Rabi,
    Rwa,
    TmFast,
    TmSlow,
    TmIntermediate,
    Outside,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Rabi => "RABI",
            Regime::Rwa => "RWA",
            Regime::TmFast => "TM_FAST",
            Regime::TmSlow => "TM_SLOW",
            Regime::TmIntermediate => "TM_INTERMEDIATE",
            Regime::Outside => "OUTSIDE",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Cuts on `A omega / Delta^2` separating fast and slow crossings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeThresholds {
    pub fast: f64,
    pub slow: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            fast: 10.0,
            slow: 0.1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeLabel {
    pub label: Regime,
    pub a_over_delta: f64,
    pub omega_over_delta: f64,
    pub a_omega_over_delta2: f64,
    pub rabi: bool,
    pub rwa: bool,
    /// Sub-label when the transfer-matrix picture applies.
    pub tm: Option<Regime>,
}

pub fn classify_regime(p: &DriveParams) -> RegimeLabel {
    classify_regime_with(p, &RegimeThresholds::default())
}

/// Flags every applicable approximation and picks the most specific one:
/// weak driving, then transfer matrix, then rotating wave.
pub fn classify_regime_with(p: &DriveParams, th: &RegimeThresholds) -> RegimeLabel {
    let a = p.amplitude / p.delta;
    let w = p.omega / p.delta;
    let aw = p.amplitude * p.omega / (p.delta * p.delta);
    let rabi = a < 1.0;
    let rwa = w > 1.0;
    let tm = (a > 1.0 && p.amplitude > p.epsilon0).then(|| {
        if aw >= th.fast {
            Regime::TmFast
        } else if aw <= th.slow {
            Regime::TmSlow
        } else {
            Regime::TmIntermediate
        }
    });
    let label = if rabi {
        Regime::Rabi
    } else if let Some(sub) = tm {
        sub
    } else if rwa {
        Regime::Rwa
    } else {
        Regime::Outside
    };
    RegimeLabel {
        label,
        a_over_delta: a,
        omega_over_delta: w,
        a_omega_over_delta2: aw,
        rabi,
        rwa,
        tm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(eps0: f64, amp: f64, omega: f64) -> RegimeLabel {
        classify_regime(&DriveParams::new(1.0, eps0, amp, omega).unwrap())
    }

    #[test]
    fn examples() {
        let r = label(0.0, 0.5, 5.0);
        assert_eq!(r.label, Regime::Rabi);
        assert!(r.rabi && r.rwa && r.tm.is_none());

        let r = label(3.0, 15.0, 3.0);
        assert_eq!(r.label, Regime::TmFast);
        assert!(r.rwa);

        let r = label(1.0, 16.0, 0.5);
        assert_eq!(r.tm, Some(Regime::TmIntermediate));
        assert!(!r.rwa);

        assert_eq!(label(0.0, 2.0, 0.04).label, Regime::TmSlow);
        assert_eq!(label(5.0, 3.0, 2.0).label, Regime::Rwa);
        assert_eq!(label(5.0, 3.0, 0.5).label, Regime::Outside);
    }

    #[test]
    fn scale_invariant() {
        let p = DriveParams::new(1.0, 2.0, 7.0, 1.5).unwrap();
        for s in [0.1, 3.0, 250.0] {
            let a = classify_regime(&p);
            let b = classify_regime(&p.rescaled(s));
            assert_eq!(a.label, b.label);
            assert_eq!((a.rabi, a.rwa, a.tm), (b.rabi, b.rwa, b.tm));
        }
    }
}

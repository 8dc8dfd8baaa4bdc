//! JSON configuration schemas for the subcommands. Unknown fields are
//! rejected so schema violations surface as exit code 2.

use fermitrot::hamiltonian::{self, CoefficientPair, NucleusSpec};
use fermitrot::pathcount::Ruleset;
use fermitrot::tightness::{RatioPoint, TightnessFamily};
use fermitrot::{Error, Result};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A Hamiltonian family to instantiate.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceFamily {
    Random {
        n: usize,
    },
    RandomSparse {
        n: usize,
        d: usize,
    },
    Hubbard {
        extents: Vec<usize>,
        s: f64,
        v: f64,
        #[serde(default)]
        periodic: bool,
    },
    PlaneWave {
        n: usize,
        omega: f64,
        eta: usize,
        #[serde(default)]
        nuclei: Vec<NucleusSpec>,
    },
    TightnessDense {
        n: usize,
        s: f64,
        w: f64,
    },
    TightnessSparse {
        n: usize,
        u: f64,
        w: f64,
        d: usize,
    },
}

impl InstanceFamily {
    pub fn build(&self, rng: &mut ChaCha8Rng) -> Result<CoefficientPair> {
        match self {
            InstanceFamily::Random { n } => Ok(hamiltonian::random_coefficient_pair(*n, rng)),
            InstanceFamily::RandomSparse { n, d } => {
                Ok(hamiltonian::random_sparse_coefficient_pair(*n, *d, rng))
            }
            InstanceFamily::Hubbard {
                extents,
                s,
                v,
                periodic,
            } => hamiltonian::fermi_hubbard_with_boundary(extents, *s, *v, *periodic),
            InstanceFamily::PlaneWave {
                n,
                omega,
                eta,
                nuclei,
            } => hamiltonian::plane_wave(*n, *omega, *eta, nuclei),
            InstanceFamily::TightnessDense { n, s, w } => hamiltonian::tightness_instance(
                hamiltonian::TightnessKind::Dense { s: *s, w: *w },
                *n,
            ),
            InstanceFamily::TightnessSparse { n, u, w, d } => hamiltonian::tightness_instance(
                hamiltonian::TightnessKind::Sparse {
                    u: *u,
                    w: *w,
                    d: *d,
                },
                *n,
            ),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            InstanceFamily::Random { n }
            | InstanceFamily::RandomSparse { n, .. }
            | InstanceFamily::PlaneWave { n, .. }
            | InstanceFamily::TightnessDense { n, .. }
            | InstanceFamily::TightnessSparse { n, .. } => *n,
            InstanceFamily::Hubbard { extents, .. } => 2 * extents.iter().product::<usize>(),
        }
    }
}

fn default_error_times() -> Vec<f64> {
    vec![0.02, 0.04, 0.06, 0.08, 0.1]
}

fn default_orders() -> Vec<u32> {
    vec![1, 2]
}

fn one() -> u64 {
    1
}

fn default_instances() -> u32 {
    3
}

/// `error`: Trotter-error sweep over t for each order, plus fitted slopes.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorConfig {
    #[serde(default = "default_error_family")]
    pub family: InstanceFamily,
    pub eta: usize,
    #[serde(default = "default_orders")]
    pub orders: Vec<u32>,
    #[serde(default = "default_error_times")]
    pub times: Vec<f64>,
    #[serde(default = "one")]
    pub steps: u64,
    #[serde(default = "default_instances")]
    pub instances: u32,
}

fn default_error_family() -> InstanceFamily {
    InstanceFamily::Random { n: 6 }
}

impl Default for ErrorConfig {
    fn default() -> Self {
        ErrorConfig {
            family: default_error_family(),
            eta: 3,
            orders: default_orders(),
            times: default_error_times(),
            steps: 1,
            instances: default_instances(),
        }
    }
}

/// `bound`: evaluate the bound families against the measured error.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundConfig {
    #[serde(default = "default_bound_family")]
    pub family: InstanceFamily,
    pub eta: usize,
    #[serde(default = "default_orders")]
    pub orders: Vec<u32>,
    #[serde(default = "default_bound_time")]
    pub t: f64,
    #[serde(default = "default_instances")]
    pub instances: u32,
}

fn default_bound_family() -> InstanceFamily {
    InstanceFamily::Random { n: 4 }
}

fn default_bound_time() -> f64 {
    0.1
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            family: default_bound_family(),
            eta: 2,
            orders: default_orders(),
            t: default_bound_time(),
            instances: default_instances(),
        }
    }
}

/// `commutator`: γ-enumeration seminorm table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommutatorConfig {
    #[serde(default = "default_bound_family")]
    pub family: InstanceFamily,
    pub eta: usize,
    #[serde(default = "default_p")]
    pub p: usize,
}

fn default_p() -> usize {
    2
}

impl Default for CommutatorConfig {
    fn default() -> Self {
        CommutatorConfig {
            family: default_bound_family(),
            eta: 2,
            p: 2,
        }
    }
}

/// `pathcount`: degree tables and closed-form comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathcountConfig {
    #[serde(default = "default_pathcount_family")]
    pub family: InstanceFamily,
    pub eta: usize,
    /// Commutator word, innermost letter first, e.g. "TV" for [V, T].
    #[serde(default = "default_gamma")]
    pub gamma: String,
    #[serde(default = "default_ruleset")]
    pub ruleset: Ruleset,
}

fn default_pathcount_family() -> InstanceFamily {
    InstanceFamily::Hubbard {
        extents: vec![2],
        s: 1.0,
        v: 4.0,
        periodic: false,
    }
}

fn default_gamma() -> String {
    "TV".into()
}

fn default_ruleset() -> Ruleset {
    Ruleset::Standard
}

impl Default for PathcountConfig {
    fn default() -> Self {
        PathcountConfig {
            family: default_pathcount_family(),
            eta: 2,
            gamma: default_gamma(),
            ruleset: Ruleset::Standard,
        }
    }
}

impl PathcountConfig {
    pub fn gamma_word(&self) -> Result<fermitrot::commutator::GammaWord> {
        let bits: Vec<bool> = self
            .gamma
            .chars()
            .map(|c| match c {
                'T' | 't' | '1' => Ok(true),
                'V' | 'v' | '0' => Ok(false),
                other => Err(Error::InvalidGamma {
                    context: format!("unknown letter {other:?}"),
                }),
            })
            .collect::<Result<_>>()?;
        fermitrot::commutator::GammaWord::new(bits)
    }
}

/// `tightness`: ratio report over an explicit grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TightnessConfig {
    #[serde(default = "default_tightness_family")]
    pub family: TightnessFamily,
    #[serde(default = "default_tightness_points")]
    pub points: Vec<RatioPoint>,
    /// Optional fixed (s, w) or (u, w); defaults to the unscaled instance.
    #[serde(default)]
    pub scale: Option<(f64, f64)>,
}

fn default_tightness_family() -> TightnessFamily {
    TightnessFamily::VFirst
}

fn default_tightness_points() -> Vec<RatioPoint> {
    vec![
        RatioPoint {
            n: 8,
            eta: 2,
            d: None,
            p: 1,
        },
        RatioPoint {
            n: 12,
            eta: 3,
            d: None,
            p: 1,
        },
        RatioPoint {
            n: 16,
            eta: 4,
            d: None,
            p: 1,
        },
    ]
}

impl Default for TightnessConfig {
    fn default() -> Self {
        TightnessConfig {
            family: default_tightness_family(),
            points: default_tightness_points(),
            scale: None,
        }
    }
}

/// `hamiltonian`: build a coefficient pair and serialize it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianConfig {
    #[serde(default = "default_hamiltonian_family")]
    pub family: InstanceFamily,
}

fn default_hamiltonian_family() -> InstanceFamily {
    InstanceFamily::Hubbard {
        extents: vec![2],
        s: 1.0,
        v: 4.0,
        periodic: false,
    }
}

impl Default for HamiltonianConfig {
    fn default() -> Self {
        HamiltonianConfig {
            family: default_hamiltonian_family(),
        }
    }
}

/// `selfcheck`: no parameters beyond the seed.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelfcheckConfig {}

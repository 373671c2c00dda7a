//! Points of `O ∩ h^perp` together with the two tangent spaces that bracket
//! the true tangent of the intersection.

use serde::Serialize;

use super::kks::KksForm;
use crate::error::{Error, Result};
use crate::exactalg::matrix::independent_subset;
use crate::exactalg::{Field, PrimeField};
use crate::homspace::{h_perp, AnnihilatorSpace, GroupSampler, HomogeneousSpace, SubalgebraSpec, SubgroupSpec};
use crate::liestruct::{bracket, dominance_leq, jordan_type, richardson_partition, Mat, ParabolicComposition, Partition};

/// Why a sample's tangent bounds coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// The certified subspace already fills `[g,a] ∩ h^perp`.
    EqualDims,
    /// `dim([g,a] ∩ h^perp) = dim O + dim h^perp - dim g`: the intersection is
    /// transverse at `a`, so `[g,a] ∩ h^perp` is the tangent space.
    Transverse,
    /// The certified subspace has the known dimension of the component.
    KnownDimension,
}

/// A point `a` of `O ∩ h^perp`, with
/// `certified_tangent ⊆ T_a(O ∩ h^perp) ⊆ ambient_tangent = [g,a] ∩ h^perp`.
#[derive(Debug, Clone)]
pub struct IntersectionSample<F: Field> {
    pub a: Mat<F>,
    pub jordan_check: Partition,
    pub ambient_tangent: Vec<Mat<F>>,
    pub certified_tangent: Vec<Mat<F>>,
    pub ambient_sdim: usize,
    pub certified_sdim: usize,
    pub exactness: Option<Exactness>,
    pub source: String,
}

impl<F: Field> IntersectionSample<F> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_tangent.len()
    }

    pub fn certified_dim(&self) -> usize {
        self.certified_tangent.len()
    }

    /// Upper bound for `sdim` of the component through `a`.
    pub fn upper(&self) -> usize {
        if self.exactness.is_some() {
            self.certified_sdim
        } else {
            self.ambient_sdim
        }
    }
}

/// Shape of `h^perp` for the named subgroups, used for closed-form sampling
/// families and for known dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Catalog {
    /// `h = 0`, `h^perp = g`.
    Trivial,
    /// `h = g`, `h^perp = 0`.
    Full,
    Torus,
    /// `h = p_Q` (so `h^perp = n_Q`) when `perp_is_nilradical`, otherwise
    /// `h = n_Q` (so the nilpotent part of `h^perp = p_Q` is `Ad(Q) n`).
    ParabolicType {
        comp: ParabolicComposition,
        perp_is_nilradical: bool,
    },
    None,
}

impl Catalog {
    pub fn of(spec: &SubgroupSpec, n: usize) -> Self {
        let borel = ParabolicComposition::borel(n);
        match spec {
            SubgroupSpec::Trivial => Self::Trivial,
            SubgroupSpec::Full => Self::Full,
            SubgroupSpec::Torus => Self::Torus,
            SubgroupSpec::Borel => Self::ParabolicType {
                comp: borel,
                perp_is_nilradical: true,
            },
            SubgroupSpec::Parabolic(c) => Self::ParabolicType {
                comp: c.clone(),
                perp_is_nilradical: true,
            },
            SubgroupSpec::Unipotent => Self::ParabolicType {
                comp: borel,
                perp_is_nilradical: false,
            },
            SubgroupSpec::Nilradical(c) => Self::ParabolicType {
                comp: c.clone(),
                perp_is_nilradical: false,
            },
            SubgroupSpec::Custom(_) => Self::None,
        }
    }

    /// Proven emptiness of `O ∩ h^perp`, with the reason.
    pub fn certified_empty(&self, lambda: &Partition) -> Option<&'static str> {
        if lambda.is_zero_orbit() {
            return None;
        }
        match self {
            Self::Full => Some("h^perp = 0 contains only the zero orbit"),
            Self::ParabolicType {
                comp,
                perp_is_nilradical: true,
            } => {
                let rich = richardson_partition(comp);
                match dominance_leq(lambda, &rich) {
                    Ok(true) => None,
                    _ => Some("orbit not in the closure of the Richardson orbit, so it misses n_Q"),
                }
            }
            _ => None,
        }
    }

    /// Dimension of every component of `O ∩ h^perp`, when known in closed form.
    pub fn known_dim(&self, lambda: &Partition) -> Option<usize> {
        if lambda.is_zero_orbit() {
            return Some(0);
        }
        match self {
            Self::Trivial => Some(lambda.orbit_dim()),
            Self::ParabolicType { comp, perp_is_nilradical } => {
                let is_borel = comp.blocks().iter().all(|&b| b == 1);
                if is_borel {
                    // orbital varieties: O ∩ n is equidimensional of dim O / 2
                    Some(lambda.orbit_dim() / 2)
                } else if *perp_is_nilradical && *lambda == richardson_partition(comp) {
                    Some(comp.nilradical_dim())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// `O ∩ h^perp ⊆ O ∩ n`, a union of Lagrangians, so every component is isotropic.
    pub fn isotropic(&self) -> bool {
        match self {
            Self::ParabolicType { comp, perp_is_nilradical } => {
                *perp_is_nilradical || comp.blocks().iter().all(|&b| b == 1)
            }
            _ => false,
        }
    }

    /// Connected group preserving `h^perp`, when it has a sampler.
    pub fn normalizer_group(&self) -> Option<GroupSampler> {
        match self {
            Self::Trivial => Some(GroupSampler::Full),
            Self::Torus => Some(GroupSampler::Torus),
            Self::ParabolicType { comp, .. } => Some(GroupSampler::Parabolic(comp.clone())),
            Self::Full | Self::None => None,
        }
    }
}

/// Everything needed to analyse points of `O ∩ h^perp` for one space and prime.
#[derive(Debug, Clone)]
pub struct IntersectionContext {
    pub x: HomogeneousSpace<PrimeField>,
    pub perp: AnnihilatorSpace<PrimeField>,
    pub normalizer: SubalgebraSpec<PrimeField>,
    pub catalog: Catalog,
}

impl IntersectionContext {
    pub fn new(x: HomogeneousSpace<PrimeField>, catalog: Catalog) -> Result<Self> {
        let perp = h_perp(x.h())?;
        let normalizer = x.h().normalizer()?;
        Ok(Self {
            x,
            perp,
            normalizer,
            catalog,
        })
    }

    pub fn field(&self) -> &PrimeField {
        self.x.g().field()
    }

    pub fn in_perp(&self, m: &Mat<PrimeField>) -> Result<bool> {
        let g = self.x.g();
        for y in self.x.h().basis() {
            if !self.field().is_zero(&g.pairing(m, y)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Analyse a point `a` expected to have Jordan type `lambda`. `family` is
    /// an optional linear space through `a` whose generic points have type
    /// `lambda`; it then lies in the tangent of the component.
    pub fn analyze(
        &self,
        a: Mat<PrimeField>,
        lambda: &Partition,
        family: Option<&[Mat<PrimeField>]>,
        source: String,
    ) -> Result<IntersectionSample<PrimeField>> {
        let g = self.x.g();
        let f = *self.field();
        if !g.contains(&a) || !self.in_perp(&a)? {
            return Err(Error::InvalidArgument("sample point is not in h^perp".into()));
        }
        let jt = jordan_type(&a)?;
        if jt != *lambda {
            return Err(Error::InvalidArgument(format!("sample has Jordan type {jt}, expected {lambda}")));
        }
        let kks = KksForm::new(g, a.clone())?;

        // ambient: x with tr([x,a] y) = 0 for y in h, i.e. tr(x [a,y]) = 0
        let ambient_pre: Vec<Mat<PrimeField>> = if self.x.h().dim() == 0 {
            g.basis().to_vec()
        } else {
            let cs: Vec<Mat<PrimeField>> = self.x.h().basis().iter().map(|y| bracket(&a, y)).collect::<Result<_>>()?;
            let rows: Vec<Vec<u64>> = cs
                .iter()
                .map(|c| g.basis().iter().map(|b| g.pairing(b, c)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            Mat::from_rows(f, g.dim(), &rows)?
                .kernel_basis()
                .iter()
                .map(|c| g.from_coords(c))
                .collect()
        };

        let mut certified_pre: Vec<Mat<PrimeField>> = self.normalizer.basis().to_vec();
        if let Some(fam) = family {
            for w in fam {
                certified_pre.push(kks.preimage(w)?);
            }
        }

        let ambient_tangent = image_basis(&f, &a, &ambient_pre)?;
        let mut certified_tangent = image_basis(&f, &a, &certified_pre)?;
        for u in &certified_tangent {
            if !self.in_perp(u)? {
                return Err(Error::BoundViolation("certified tangent vector leaves h^perp".into()));
            }
        }
        let ambient_sdim = kks.gram_on_preimages(&ambient_pre)?.rank() / 2;
        let mut certified_sdim = kks.gram_on_preimages(&certified_pre)?.rank() / 2;
        if certified_sdim > ambient_sdim {
            return Err(Error::BoundViolation(format!(
                "certified sdim {certified_sdim} exceeds ambient sdim {ambient_sdim}"
            )));
        }

        let expected = (lambda.orbit_dim() + self.perp.dim()) as i64 - g.dim() as i64;
        let exactness = if certified_tangent.len() == ambient_tangent.len() {
            Some(Exactness::EqualDims)
        } else if ambient_tangent.len() as i64 == expected {
            certified_tangent = ambient_tangent.clone();
            certified_sdim = ambient_sdim;
            Some(Exactness::Transverse)
        } else if self.catalog.known_dim(lambda) == Some(certified_tangent.len()) {
            Some(Exactness::KnownDimension)
        } else {
            None
        };
        Ok(IntersectionSample {
            a,
            jordan_check: jt,
            ambient_tangent,
            certified_tangent,
            ambient_sdim,
            certified_sdim,
            exactness,
            source,
        })
    }
}

/// A basis of `span{[x, a]}`.
fn image_basis(f: &PrimeField, a: &Mat<PrimeField>, pre: &[Mat<PrimeField>]) -> Result<Vec<Mat<PrimeField>>> {
    let images: Vec<Mat<PrimeField>> = pre.iter().map(|x| bracket(x, a)).collect::<Result<_>>()?;
    let flat: Vec<Vec<u64>> = images.iter().map(|m| m.entries().to_vec()).collect();
    let len = a.rows() * a.cols();
    Ok(independent_subset(f, len, &flat).into_iter().map(|i| images[i].clone()).collect())
}

//! Interchangeable computation paths, registered by name.
//!
//! ```
//! use symvol_core::methods::Registry;
//! use symvol_core::algebra::rat;
//!
//! let registry = Registry::standard();
//! let dvv = registry.volume("dvv").unwrap();
//! let point = [rat(3, 1), rat(4, 1), rat(5, 1), rat(6, 1)];
//! assert_eq!(dvv.evaluate(0, 4, &point).unwrap(), rat(43, 1));
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Correlator, EvenPolynomial, Rational};
use crate::correlators::{correlator_laplace_in, ResidueTable};
use crate::error::{Error, Result};
use crate::intersections::IntersectionTable;
use crate::ribbon::{brute_volume_with_limit, half_edge_limit};
use crate::volumes::{volume_from_intersections_in, BaseVolumes, VolumeKey, VolumeTable};

pub trait VolumeMethod: Send + Sync {
    fn name(&self) -> &'static str;

    /// `Vol_{g,n}` as a polynomial; pointwise-only methods return [`Error::PointwiseOnly`].
    fn polynomial(&self, g: u32, n: usize) -> Result<EvenPolynomial>;

    fn evaluate(&self, g: u32, n: usize, lengths: &[Rational]) -> Result<Rational> {
        self.polynomial(g, n)?.eval(lengths)
    }
}

pub trait CorrelatorMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn correlator(&self, g: u32, n: usize) -> Result<Correlator>;
}

fn require_stable(g: u32, n: usize) -> Result<()> {
    if VolumeKey::new(g, n).is_stable() {
        Ok(())
    } else {
        Err(Error::Unstable { g, n })
    }
}

/// Edge-removal recursion on volume polynomials.
pub struct Recursion(pub Arc<VolumeTable>);

impl VolumeMethod for Recursion {
    fn name(&self) -> &'static str {
        "recursion"
    }

    fn polynomial(&self, g: u32, n: usize) -> Result<EvenPolynomial> {
        require_stable(g, n)?;
        Ok((*self.0.volume(g, n)).clone())
    }
}

/// Psi-class intersection numbers from Virasoro constraints, assembled into a polynomial.
pub struct Dvv(pub Arc<IntersectionTable>);

impl VolumeMethod for Dvv {
    fn name(&self) -> &'static str {
        "dvv"
    }

    fn polynomial(&self, g: u32, n: usize) -> Result<EvenPolynomial> {
        volume_from_intersections_in(&self.0, g, n)
    }
}

/// Cell-by-cell integration over ribbon graphs; only point values.
pub struct Brute {
    pub half_edge_limit: usize,
}

impl VolumeMethod for Brute {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn polynomial(&self, _g: u32, _n: usize) -> Result<EvenPolynomial> {
        Err(Error::PointwiseOnly("brute".into()))
    }

    fn evaluate(&self, g: u32, n: usize, lengths: &[Rational]) -> Result<Rational> {
        require_stable(g, n)?;
        brute_volume_with_limit(g, n, lengths, self.half_edge_limit)
    }
}

/// Laplace transform of the recursion volumes.
pub struct Laplace(pub Arc<VolumeTable>);

impl CorrelatorMethod for Laplace {
    fn name(&self) -> &'static str {
        "laplace"
    }

    fn correlator(&self, g: u32, n: usize) -> Result<Correlator> {
        correlator_laplace_in(&self.0, g, n)
    }
}

/// Residue recursion on the Airy curve.
pub struct ResidueRecursion(pub Arc<ResidueTable>);

impl CorrelatorMethod for ResidueRecursion {
    fn name(&self) -> &'static str {
        "eo"
    }

    fn correlator(&self, g: u32, n: usize) -> Result<Correlator> {
        Ok((*self.0.correlator(g, n)?).clone())
    }
}

#[derive(Default, Clone)]
pub struct Registry {
    volumes: BTreeMap<String, Arc<dyn VolumeMethod>>,
    correlators: BTreeMap<String, Arc<dyn CorrelatorMethod>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every built-in path with the usual base cases.
    pub fn standard() -> Self {
        Self::with_base(BaseVolumes::default())
    }

    /// Built-in paths with the volume recursion (and its Laplace transform) seeded by `base`.
    pub fn with_base(base: BaseVolumes) -> Self {
        let volumes = Arc::new(VolumeTable::with_base(base));
        let mut r = Self::new();
        r.register_volume(Recursion(volumes.clone()));
        r.register_volume(Dvv(Arc::new(IntersectionTable::new())));
        r.register_volume(Brute { half_edge_limit: half_edge_limit() });
        r.register_correlator(Laplace(volumes));
        r.register_correlator(ResidueRecursion(Arc::new(ResidueTable::new())));
        r
    }

    /// Replaces any method already registered under the same name.
    pub fn register_volume(&mut self, method: impl VolumeMethod + 'static) {
        self.volumes.insert(method.name().to_string(), Arc::new(method));
    }

    pub fn register_correlator(&mut self, method: impl CorrelatorMethod + 'static) {
        self.correlators.insert(method.name().to_string(), Arc::new(method));
    }

    pub fn volume(&self, name: &str) -> Result<Arc<dyn VolumeMethod>> {
        self.volumes.get(name).cloned().ok_or_else(|| Error::UnknownMethod(name.to_string()))
    }

    pub fn correlator(&self, name: &str) -> Result<Arc<dyn CorrelatorMethod>> {
        self.correlators.get(name).cloned().ok_or_else(|| Error::UnknownMethod(name.to_string()))
    }

    pub fn volume_names(&self) -> Vec<&str> {
        self.volumes.keys().map(String::as_str).collect()
    }

    pub fn correlator_names(&self) -> Vec<&str> {
        self.correlators.keys().map(String::as_str).collect()
    }
}

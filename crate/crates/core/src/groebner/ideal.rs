use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::GroebnerError;
use crate::polyring::{MonomialOrder, Polynomial, VarRing};

type Slot = Arc<Mutex<Option<Arc<[Polynomial]>>>>;

/// A generator list together with a compute-once cache of reduced Groebner
/// bases, one per monomial order.
pub struct Ideal {
    ring: Arc<VarRing>,
    gens: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Slot>>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<VarRing>, gens: Vec<Polynomial>) -> Result<Ideal, GroebnerError> {
        if gens.iter().any(|g| **g.ring() != **ring) {
            return Err(GroebnerError::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Ideal of the given nonempty generator list, taking the ring from the first one.
    pub fn from_gens(gens: Vec<Polynomial>) -> Result<Ideal, GroebnerError> {
        let ring = gens.first().ok_or(GroebnerError::EmptyGenerators)?.ring().clone();
        Self::new(&ring, gens)
    }

    pub fn zero(ring: &Arc<VarRing>) -> Ideal {
        Ideal { ring: ring.clone(), gens: Vec::new(), cache: Mutex::new(HashMap::new()) }
    }

    pub fn ring(&self) -> &Arc<VarRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    fn slot(&self, order: &MonomialOrder) -> Slot {
        let mut cache = self.cache.lock().expect("cache lock");
        cache.entry(order.clone()).or_default().clone()
    }

    /// Reduced Groebner basis under `order`, computed at most once.
    pub fn groebner(&self, order: &MonomialOrder) -> Arc<[Polynomial]> {
        self.groebner_with(order, &super::GroebnerConfig::default()).expect("unbounded completion always finishes")
    }

    pub fn groebner_with(
        &self,
        order: &MonomialOrder,
        cfg: &super::GroebnerConfig,
    ) -> Result<Arc<[Polynomial]>, GroebnerError> {
        if order.nvars() != self.ring.count() {
            return Err(GroebnerError::OrderMismatch);
        }
        let slot = self.slot(order);
        let mut guard = slot.lock().expect("slot lock");
        if let Some(gb) = guard.as_ref() {
            return Ok(gb.clone());
        }
        let gb: Arc<[Polynomial]> = super::buchberger_with(&self.gens, order, cfg)?.into();
        *guard = Some(gb.clone());
        Ok(gb)
    }

    /// Whether a basis for `order` is already cached.
    pub fn has_cached(&self, order: &MonomialOrder) -> bool {
        self.cache.lock().expect("cache lock").get(order).is_some_and(|s| s.lock().expect("slot lock").is_some())
    }

    /// Records a basis known to be the reduced basis for `order`.
    pub(crate) fn seed(&self, order: &MonomialOrder, gb: Vec<Polynomial>) {
        let slot = self.slot(order);
        *slot.lock().expect("slot lock") = Some(gb.into());
    }
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache lock");
        let copied = cache
            .iter()
            .filter_map(|(o, s)| {
                s.lock().expect("slot lock").clone().map(|gb| (o.clone(), Arc::new(Mutex::new(Some(gb)))))
            })
            .collect();
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), cache: Mutex::new(copied) }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal<{}>({})", self.ring, gens.join(", "))
    }
}

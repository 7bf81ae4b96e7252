use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::order::MonomialOrder;
use super::PolyError;

/// Ordered list of variable names.
///
/// The canonical term order of a ring is graded reverse lexicographic in the
/// listed order, except that a variable named `x0` (if present) is placed
/// last, i.e. made the least variable.
#[derive(Clone)]
pub struct VarRing {
    names: Vec<String>,
    canonical: MonomialOrder,
}

impl VarRing {
    pub fn new<I, S>(names: I) -> Result<Arc<VarRing>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(PolyError::InvalidRing(format!("bad variable name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(PolyError::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        let mut canonical = MonomialOrder::grevlex(names.len());
        if let Some(i) = names.iter().position(|n| n == "x0") {
            canonical = canonical.with_least(i);
        }
        Ok(Arc::new(VarRing { names, canonical }))
    }

    /// `x{lo}, ..., x{hi}`.
    pub fn indexed(prefix: &str, lo: usize, hi: usize) -> Arc<VarRing> {
        Self::new((lo..=hi).map(|i| format!("{prefix}{i}"))).expect("generated names are valid")
    }

    /// `k[x1..xn]`.
    pub fn affine(n: usize) -> Arc<VarRing> {
        Self::indexed("x", 1, n)
    }

    /// `k[x0..xn]`.
    pub fn projective(n: usize) -> Arc<VarRing> {
        Self::indexed("x", 0, n)
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn canonical_order(&self) -> &MonomialOrder {
        &self.canonical
    }

    /// The same variables followed by a fresh one whose name starts with `stem`.
    pub fn with_fresh(&self, stem: &str) -> (Arc<VarRing>, usize) {
        let mut name = stem.to_string();
        let mut k = 0;
        while self.index_of(&name).is_some() {
            k += 1;
            name = format!("{stem}{k}");
        }
        let mut names = self.names.clone();
        names.push(name);
        let idx = names.len() - 1;
        (Self::new(names).expect("fresh name is unique"), idx)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PartialEq for VarRing {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VarRing {}

impl fmt::Debug for VarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarRing({})", self.names.join(" "))
    }
}

impl fmt::Display for VarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(VarRing::new(["x", "x"]).is_err());
        assert!(VarRing::new(["1x"]).is_err());
        assert!(VarRing::new(["x1", "y_2"]).is_ok());
    }

    #[test]
    fn fresh_variable_avoids_collisions() {
        let r = VarRing::new(["t", "t1", "x"]).unwrap();
        let (ext, idx) = r.with_fresh("t");
        assert_eq!(idx, 3);
        assert_eq!(ext.name(3), "t2");
    }
}

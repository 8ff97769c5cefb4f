//! Polynomial ring descriptors.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::MonomialOrder;

/// `k[x_1, ..., x_s]` with a coefficient field and a monomial order.
///
/// Every variable has degree 1 except internal tag variables introduced for
/// elimination, which carry weight 0 so that tagged ideals stay graded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    variables: Vec<String>,
    field: Field,
    order: MonomialOrder,
    weights: Vec<u32>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new<S: AsRef<str>>(variables: &[S], field: Field, order: MonomialOrder) -> Result<RingRef> {
        let weights = vec![1; variables.len()];
        Self::weighted(variables, weights, field, order)
    }

    /// A ring where variable `i` has degree `weights[i]`.
    pub fn weighted<S: AsRef<str>>(
        variables: &[S],
        weights: Vec<u32>,
        field: Field,
        order: MonomialOrder,
    ) -> Result<RingRef> {
        let variables: Vec<String> = variables.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &variables {
            if !is_identifier(v) {
                return Err(Error::InvalidArgument(format!("bad variable name {v:?}")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        if let Field::Prime(p) = field {
            Field::prime(p)?;
        }
        if let MonomialOrder::Elimination { block } = order {
            if block > variables.len() {
                return Err(Error::InvalidArgument("elimination block too large".into()));
            }
        }
        if weights.len() != variables.len() {
            return Err(Error::LengthMismatch(weights.len(), variables.len()));
        }
        Ok(Arc::new(Ring {
            variables,
            field,
            order,
            weights,
        }))
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// True when all variables have degree 1.
    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|w| *w == 1)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<RingRef> {
        Self::weighted(&self.variables, self.weights.clone(), self.field, order)
    }

    pub fn with_field(&self, field: Field) -> Result<RingRef> {
        Self::weighted(&self.variables, self.weights.clone(), field, self.order)
    }

    /// The ring with the given variables moved to the front under an
    /// elimination order for them. Returns the permutation `new -> old`.
    pub fn elimination_ring(&self, eliminate: &[usize]) -> Result<(RingRef, Vec<usize>)> {
        let mut perm: Vec<usize> = eliminate.to_vec();
        perm.extend((0..self.nvars()).filter(|i| !eliminate.contains(i)));
        let names: Vec<&str> = perm.iter().map(|&i| self.variables[i].as_str()).collect();
        let weights = perm.iter().map(|&i| self.weights[i]).collect();
        let ring = Self::weighted(
            &names,
            weights,
            self.field,
            MonomialOrder::Elimination { block: eliminate.len() },
        )?;
        Ok((ring, perm))
    }

    /// This ring with a fresh degree-0 tag variable in front, under an order
    /// eliminating it.
    pub fn tagged(&self) -> RingRef {
        let mut tag = String::from("t");
        while self.variables.contains(&tag) {
            tag.push('_');
        }
        let mut names = vec![tag];
        names.extend(self.variables.iter().cloned());
        let mut weights = vec![0];
        weights.extend(&self.weights);
        Self::weighted(&names, weights, self.field, MonomialOrder::Elimination { block: 1 })
            .expect("tagged ring is well formed")
    }

    /// The ring on the variables not listed, keeping field and order.
    pub fn without(&self, drop: &[usize]) -> Result<RingRef> {
        let keep: Vec<usize> = (0..self.nvars()).filter(|i| !drop.contains(i)).collect();
        let names: Vec<&str> = keep.iter().map(|&i| self.variables[i].as_str()).collect();
        let weights = keep.iter().map(|&i| self.weights[i]).collect();
        let order = match self.order {
            MonomialOrder::Elimination { .. } => MonomialOrder::Grevlex,
            o => o,
        };
        Self::weighted(&names, weights, self.field, order)
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_composites() {
        assert_eq!(
            Ring::new(&["x", "x"], Field::Rational, MonomialOrder::Grevlex).unwrap_err(),
            Error::DuplicateVariable("x".into())
        );
        assert!(Ring::new(&["x"], Field::Prime(9), MonomialOrder::Grevlex).is_err());
        assert!(Ring::new(&["2x"], Field::Rational, MonomialOrder::Grevlex).is_err());
    }

    #[test]
    fn tagged_ring_avoids_name_clash() {
        let r = Ring::new(&["t", "x"], Field::Rational, MonomialOrder::Grevlex).unwrap();
        let t = r.tagged();
        assert_eq!(t.variables(), &["t_", "t", "x"]);
        assert_eq!(t.weights(), &[0, 1, 1]);
    }
}

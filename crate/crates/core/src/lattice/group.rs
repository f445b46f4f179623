use std::fmt;

use num_bigint::BigInt;

/// Finitely generated abelian group `ℤ^free_rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/t_k`
/// with `t₁ | t₂ | …` and every `tᵢ > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        Self { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    /// `0`, `Z`, `Z^2`, `Z/2 + Z/6 + Z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(AbelianGroup::new(0, vec![]).to_string(), "0");
        assert_eq!(AbelianGroup::new(1, vec![]).to_string(), "Z");
        assert_eq!(AbelianGroup::new(2, vec![2.into()]).to_string(), "Z/2 + Z^2");
    }
}

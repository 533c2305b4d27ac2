use std::fmt;

/// Working copies of an auxiliary variable. Primed copies only exist while a
/// transvectant is being formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuxCopy {
    Plain,
    Prime,
    DoublePrime,
}

impl AuxCopy {
    fn offset(self) -> usize {
        match self {
            AuxCopy::Plain => 0,
            AuxCopy::Prime => 1,
            AuxCopy::DoublePrime => 2,
        }
    }

    fn from_offset(o: usize) -> Self {
        match o {
            0 => AuxCopy::Plain,
            1 => AuxCopy::Prime,
            _ => AuxCopy::DoublePrime,
        }
    }

    fn marks(self) -> &'static str {
        match self {
            AuxCopy::Plain => "",
            AuxCopy::Prime => "'",
            AuxCopy::DoublePrime => "''",
        }
    }
}

/// A variable of the polynomial ring attached to a `k`-qubit system.
///
/// Amplitude bitstrings are stored as integers with the first tensor factor in
/// the most significant bit, so `a_{011}` is `Amp(3)` when `k = 3`. Auxiliary
/// slots are zero-based internally and printed one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariableId {
    Amp(u32),
    AmpConj(u32),
    Aux { slot: u8, copy: AuxCopy, component: u8 },
}

impl VariableId {
    pub fn aux(slot: usize, component: usize) -> Self {
        VariableId::Aux { slot: slot as u8, component: component as u8, copy: AuxCopy::Plain }
    }

    pub fn aux_copy(slot: usize, component: usize, copy: AuxCopy) -> Self {
        VariableId::Aux { slot: slot as u8, component: component as u8, copy }
    }

    /// Position in the dense variable ordering for `k` qubits: amplitudes,
    /// then conjugates, then auxiliaries grouped by slot and copy.
    pub fn index(self, k: usize) -> u16 {
        let n = 1usize << k;
        let i = match self {
            VariableId::Amp(b) => b as usize,
            VariableId::AmpConj(b) => n + b as usize,
            VariableId::Aux { slot, component, copy } => {
                2 * n + (slot as usize * 3 + copy.offset()) * 2 + component as usize
            }
        };
        i as u16
    }

    pub fn from_index(k: usize, idx: u16) -> Self {
        let n = 1usize << k;
        let i = idx as usize;
        if i < n {
            VariableId::Amp(i as u32)
        } else if i < 2 * n {
            VariableId::AmpConj((i - n) as u32)
        } else {
            let r = i - 2 * n;
            let component = (r % 2) as u8;
            let sc = r / 2;
            VariableId::Aux { slot: (sc / 3) as u8, component, copy: AuxCopy::from_offset(sc % 3) }
        }
    }

    pub fn universe_size(k: usize) -> usize {
        2 * (1 << k) + 6 * k
    }

    pub fn is_amp(self) -> bool {
        matches!(self, VariableId::Amp(_))
    }

    pub fn is_amp_conj(self) -> bool {
        matches!(self, VariableId::AmpConj(_))
    }

    pub fn is_aux(self) -> bool {
        matches!(self, VariableId::Aux { .. })
    }

    /// Checks that bitstrings and slots fit inside a `k`-qubit system.
    pub fn fits(self, k: usize) -> bool {
        match self {
            VariableId::Amp(b) | VariableId::AmpConj(b) => (b as usize) < (1 << k),
            VariableId::Aux { slot, component, .. } => (slot as usize) < k && component < 2,
        }
    }

    /// Renders the variable using `k`-bit strings, e.g. `a011`, `b011` for
    /// the conjugate, `x2_1'` for a primed auxiliary.
    pub fn display(self, k: usize) -> String {
        match self {
            VariableId::Amp(b) => format!("a{}", bitstring(b, k)),
            VariableId::AmpConj(b) => format!("b{}", bitstring(b, k)),
            VariableId::Aux { slot, component, copy } => {
                format!("x{}_{}{}", slot + 1, component, copy.marks())
            }
        }
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VariableId::Amp(b) => write!(f, "a[{b}]"),
            VariableId::AmpConj(b) => write!(f, "conj(a[{b}])"),
            VariableId::Aux { slot, component, copy } => {
                write!(f, "x{}_{}{}", slot + 1, component, copy.marks())
            }
        }
    }
}

pub fn bitstring(b: u32, k: usize) -> String {
    (0..k).map(|j| if (b >> (k - 1 - j)) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Parses a bitstring such as `"011"` into its integer index.
pub fn parse_bitstring(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|c| c == b'0' || c == b'1') {
        return None;
    }
    u32::from_str_radix(s, 2).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_and_order() {
        for k in 1..=5 {
            let mut prev = None;
            for idx in 0..VariableId::universe_size(k) as u16 {
                let v = VariableId::from_index(k, idx);
                assert_eq!(v.index(k), idx);
                assert!(v.fits(k));
                if let Some(p) = prev {
                    assert!(p < v, "ordering must follow the dense index");
                }
                prev = Some(v);
            }
        }
    }

    #[test]
    fn bitstrings() {
        assert_eq!(bitstring(3, 3), "011");
        assert_eq!(parse_bitstring("011"), Some(3));
        assert_eq!(VariableId::Amp(6).display(3), "a110");
        assert_eq!(VariableId::aux_copy(1, 0, AuxCopy::DoublePrime).display(3), "x2_0''");
    }
}

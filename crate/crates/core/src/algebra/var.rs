use std::fmt;
use std::sync::Arc;

/// A symbol that can appear in a polynomial.
///
/// The derived ordering doubles as the variable precedence used by the
/// monomial order: `eta` is the most significant variable, followed by
/// `xi1, xi2, ...`, then the parameters `beta`, `gamma` and any other named
/// parameter (alphabetically).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Eta,
    Xi(u32),
    Beta,
    Gamma,
    Param(Arc<str>),
}

impl Var {
    /// `xi_i`, with `i >= 1`.
    pub fn xi(index: u32) -> Var {
        assert!(index >= 1, "xi indices start at 1");
        Var::Xi(index)
    }

    /// Parameter symbol by name. `beta` and `gamma` map onto their dedicated
    /// variants so that they sort ahead of user-defined constants.
    pub fn param(name: &str) -> Var {
        match name {
            "beta" => Var::Beta,
            "gamma" => Var::Gamma,
            other => Var::Param(Arc::from(other)),
        }
    }

    pub fn is_xi(&self) -> bool {
        matches!(self, Var::Xi(_))
    }

    pub fn is_parameter(&self) -> bool {
        matches!(self, Var::Beta | Var::Gamma | Var::Param(_))
    }

    /// `xi_1 .. xi_m` in order.
    pub fn xis(m: u32) -> Vec<Var> {
        (1..=m).map(Var::Xi).collect()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Eta => f.write_str("eta"),
            Var::Xi(i) => write!(f, "xi{i}"),
            Var::Beta => f.write_str("beta"),
            Var::Gamma => f.write_str("gamma"),
            Var::Param(name) => f.write_str(name),
        }
    }
}

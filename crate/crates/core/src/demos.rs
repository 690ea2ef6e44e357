//! The bundled example ideals.

use thiserror::Error;

use crate::monomial::{Monomial, SquareFreeIdeal, VariableTable};
use crate::rees::{substitute_check, IndexSequence, ReesBinomial, RtMonomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DemoError {
    #[error("the family demo needs n >= 5, got {0}")]
    FamilyTooSmall(usize),
    #[error("unknown demo {0:?}; expected villarreal, pentagon, or family")]
    Unknown(String),
}

fn build(vars: &[&str], gens: &[&[&str]]) -> SquareFreeIdeal {
    SquareFreeIdeal::from_names(vars, gens).expect("bundled ideal is valid")
}

const X7: [&str; 7] = ["x1", "x2", "x3", "x4", "x5", "x6", "x7"];

/// `(x1x2x3, x2x4x5, x5x6x7, x3x6x7)`: a square generator graph, relation type 2.
pub fn villarreal() -> SquareFreeIdeal {
    build(
        &X7,
        &[
            &["x1", "x2", "x3"],
            &["x2", "x4", "x5"],
            &["x5", "x6", "x7"],
            &["x3", "x6", "x7"],
        ],
    )
}

/// Five generators in seven variables with a minimal generator in degree 3.
pub fn pentagon() -> SquareFreeIdeal {
    build(
        &X7,
        &[
            &["x1", "x2", "x3"],
            &["x1", "x2", "x4", "x7"],
            &["x2", "x3", "x6"],
            &["x4", "x5", "x6"],
            &["x1", "x3", "x5"],
        ],
    )
}

/// Edge ideal of the triangle.
pub fn triangle() -> SquareFreeIdeal {
    build(
        &["x1", "x2", "x3"],
        &[&["x1", "x2"], &["x2", "x3"], &["x1", "x3"]],
    )
}

/// Path `x1 - x2 - x3 - x4` as an edge ideal.
pub fn path() -> SquareFreeIdeal {
    build(
        &["x1", "x2", "x3", "x4"],
        &[&["x1", "x2"], &["x2", "x3"], &["x3", "x4"]],
    )
}

/// Edge ideal of the 5-cycle, `f_i = x_i x_{i+1}`.
pub fn five_cycle() -> SquareFreeIdeal {
    build(
        &["x1", "x2", "x3", "x4", "x5"],
        &[
            &["x1", "x2"],
            &["x2", "x3"],
            &["x3", "x4"],
            &["x4", "x5"],
            &["x5", "x1"],
        ],
    )
}

/// The family with relation type at least `2n-7`.
#[derive(Debug, Clone)]
pub struct Family {
    pub n: usize,
    pub ideal: SquareFreeIdeal,
    /// Pure binomial of T-degree `2n-7`.
    pub f: ReesBinomial,
    /// Binomial of T-degree `2n-8` with coefficients `z` and `y`.
    pub g: ReesBinomial,
    /// `G` exactly as it is usually printed: `z·T1^{n-5}∏T_i − y·T_{n-1}^{n-5}·T_n`.
    /// Kept for the substitution audit; it is not homogeneous.
    pub g_printed: PrintedBinomial,
}

/// A binomial that may not be T-homogeneous.
#[derive(Debug, Clone)]
pub struct PrintedBinomial {
    pub lhs_coef: Monomial,
    pub lhs_t: Vec<usize>,
    pub rhs_coef: Monomial,
    pub rhs_t: Vec<usize>,
}

impl PrintedBinomial {
    /// Whether both sides have the same image under `T_i ↦ f_i t`.
    pub fn audit(&self, ideal: &SquareFreeIdeal) -> bool {
        if self.lhs_t.len() != self.rhs_t.len() {
            return false;
        }
        let side = |c: &Monomial, t: &[usize]| t.iter().fold(c.clone(), |acc, &i| &acc * ideal.gen(i));
        side(&self.lhs_coef, &self.lhs_t) == side(&self.rhs_coef, &self.rhs_t)
    }

    pub fn render(&self, ideal: &SquareFreeIdeal) -> String {
        let side = |c: &Monomial, t: &[usize]| {
            let seq = IndexSequence::from_unsorted(t.to_vec()).expect("nonempty");
            RtMonomial::from_parts(c.clone(), &seq, ideal.len()).render(ideal)
        };
        format!(
            "{} - {}",
            side(&self.lhs_coef, &self.lhs_t),
            side(&self.rhs_coef, &self.rhs_t)
        )
    }
}

/// Variables `y, x2..x_{n-2}, z, u2..u_{n-2}`;
/// `f1 = X·z`, `f_i = x_i·y·∏_{j≠i} u_j`, `f_{n-1} = X·y`, `f_n = U·z`
/// with `X = ∏x_i`, `U = ∏u_i`.
pub fn family(n: usize) -> Result<Family, DemoError> {
    if n < 5 {
        return Err(DemoError::FamilyTooSmall(n));
    }
    let mid: Vec<usize> = (2..=n - 2).collect();
    let mut names = vec!["y".to_string()];
    names.extend(mid.iter().map(|i| format!("x{i}")));
    names.push("z".to_string());
    names.extend(mid.iter().map(|i| format!("u{i}")));
    let vars = VariableTable::new(&names).expect("distinct names");
    let xs: Vec<String> = mid.iter().map(|i| format!("x{i}")).collect();
    let us: Vec<String> = mid.iter().map(|i| format!("u{i}")).collect();

    let mono = |factors: Vec<String>| vars.monomial(&factors).expect("known variables");
    let mut gens = Vec::new();
    gens.push(mono([xs.clone(), vec!["z".into()]].concat()));
    for &i in &mid {
        let mut f = vec![format!("x{i}"), "y".to_string()];
        f.extend(mid.iter().filter(|&&j| j != i).map(|j| format!("u{j}")));
        gens.push(mono(f));
    }
    gens.push(mono([xs.clone(), vec!["y".into()]].concat()));
    gens.push(mono([us.clone(), vec!["z".into()]].concat()));
    let ideal = SquareFreeIdeal::new(vars.clone(), gens).expect("family ideal is valid");

    let one = ideal.one();
    let y = vars.monomial(&["y"]).expect("y");
    let z = vars.monomial(&["z"]).expect("z");

    // F = T1^{n-4} ∏T_i − T_{n-1}^{n-3} T_n^{n-4}
    let f_alpha = IndexSequence::from_runs(
        &[(1, n - 4)]
            .into_iter()
            .chain(mid.iter().map(|&i| (i, 1)))
            .collect::<Vec<_>>(),
    )
    .expect("nonempty");
    let f_beta = IndexSequence::from_runs(&[(n - 1, n - 3), (n, n - 4)]).expect("nonempty");
    let f = ReesBinomial::from_parts(f_alpha, f_beta, one.clone(), one.clone()).expect("distinct sides");

    // Homogeneous G = z·T1^{n-5} ∏T_i − y·T_{n-1}^{n-4} T_n^{n-4}
    let g_alpha = IndexSequence::from_runs(
        &[(1, n - 5)]
            .into_iter()
            .chain(mid.iter().map(|&i| (i, 1)))
            .collect::<Vec<_>>(),
    )
    .expect("nonempty");
    let g_beta = IndexSequence::from_runs(&[(n - 1, n - 4), (n, n - 4)]).expect("nonempty");
    let g = ReesBinomial::from_parts(g_alpha.clone(), g_beta, z.clone(), y.clone()).expect("distinct sides");

    let mut printed_rhs = vec![n - 1; n - 5];
    printed_rhs.push(n);
    let g_printed = PrintedBinomial {
        lhs_coef: z,
        lhs_t: g_alpha.entries().to_vec(),
        rhs_coef: y,
        rhs_t: printed_rhs,
    };

    debug_assert!(substitute_check(&ideal, &f));
    debug_assert!(substitute_check(&ideal, &g));
    Ok(Family {
        n,
        ideal,
        f,
        g,
        g_printed,
    })
}

/// Looks up a bundled ideal by name; `n` is only used by `family`.
pub fn by_name(name: &str, n: usize) -> Result<SquareFreeIdeal, DemoError> {
    match name {
        "villarreal" => Ok(villarreal()),
        "pentagon" => Ok(pentagon()),
        "family" => family(n).map(|f| f.ideal),
        "triangle" => Ok(triangle()),
        "path" => Ok(path()),
        "five-cycle" => Ok(five_cycle()),
        other => Err(DemoError::Unknown(other.to_string())),
    }
}

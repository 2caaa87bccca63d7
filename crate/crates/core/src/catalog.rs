//! Verified example instances.

use num_traits::{One, Zero};

use crate::algebra::{AlgebraPresentation, MrbAlgebraInstance, OperatorFamily, WeightFamily};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{int, parse_rational, Scalar};

fn finish(inst: MrbAlgebraInstance) -> Result<MrbAlgebraInstance> {
    inst.verified()
        .map_err(|r| Error::Malformed(format!("{} identity violations", r.violations.len())))
}

fn labels(s: usize) -> Vec<String> {
    (1..=s).map(|i| i.to_string()).collect()
}

/// `k^d` with componentwise product, `s` zero operators and zero weights.
pub fn trivial(d: usize, s: usize) -> Result<MrbAlgebraInstance> {
    if d == 0 || s == 0 {
        return Err(Error::InvalidArgument(
            "trivial instance needs positive dimension and label count".into(),
        ));
    }
    let inst = MrbAlgebraInstance::new(
        AlgebraPresentation::componentwise(d),
        OperatorFamily {
            labels: labels(s),
            matrices: vec![Matrix::zeros(d, d); s],
        },
        WeightFamily {
            values: vec![Scalar::zero(); s],
        },
    )?;
    finish(inst)
}

fn scaled_family(
    algebra: AlgebraPresentation,
    base: Matrix,
    c: &[Scalar],
) -> Result<MrbAlgebraInstance> {
    if c.is_empty() {
        return Err(Error::InvalidArgument("scale list is empty".into()));
    }
    if c.iter().any(Zero::is_zero) {
        return Err(Error::InvalidArgument("scales must be nonzero".into()));
    }
    let half = Scalar::new(1.into(), 2.into());
    let inst = MrbAlgebraInstance::new(
        algebra,
        OperatorFamily {
            labels: labels(c.len()),
            matrices: c.iter().map(|x| base.scale(x)).collect(),
        },
        WeightFamily {
            values: c.iter().map(|x| -(x * &half)).collect(),
        },
    )?;
    finish(inst)
}

/// `k^2` componentwise with `P_ω = c_ω P`, `P(a, b) = (a, 0)`, and
/// `λ_ω = -c_ω / 2`.
pub fn scaled_projection(c: &[Scalar]) -> Result<MrbAlgebraInstance> {
    let mut p = Matrix::zeros(2, 2);
    p[(0, 0)] = Scalar::one();
    scaled_family(AlgebraPresentation::componentwise(2), p, c)
}

/// Upper triangular 2x2 matrices with basis `e1 = E11`, `e2 = E12`,
/// `e3 = E22`. The base operator projects onto `span{E11, E12}` along
/// `E22`; it is a Rota-Baxter operator of weight -1 since both pieces are
/// subalgebras. Scaled as in [`scaled_projection`].
pub fn upper_triangular_scaled(c: &[Scalar]) -> Result<MrbAlgebraInstance> {
    let d = 3;
    let mut structure = vec![vec![vec![Scalar::zero(); d]; d]; d];
    structure[0][0][0] = int(1);
    structure[0][1][1] = int(1);
    structure[1][2][1] = int(1);
    structure[2][2][2] = int(1);
    let algebra = AlgebraPresentation::new(
        vec!["e1".into(), "e2".into(), "e3".into()],
        structure,
        vec![int(1), int(0), int(1)],
    )?;
    let mut p = Matrix::zeros(3, 3);
    p[(0, 0)] = int(1);
    p[(1, 1)] = int(1);
    scaled_family(algebra, p, c)
}

pub fn upper_triangular() -> Result<MrbAlgebraInstance> {
    upper_triangular_scaled(&[int(1), int(2)])
}

/// Looks up `trivial(d,s)`, `scaled_projection(c1,...)` or
/// `upper_triangular`.
pub fn by_name(name: &str) -> Result<MrbAlgebraInstance> {
    let name = name.trim();
    if name == "upper_triangular" {
        return upper_triangular();
    }
    let bad = || Error::InvalidArgument(format!("unknown catalog instance `{name}`"));
    let (head, rest) = name.split_once('(').ok_or_else(bad)?;
    let args = rest.strip_suffix(')').ok_or_else(bad)?;
    let args: Vec<&str> = args.split(',').map(str::trim).collect();
    match head.trim() {
        "trivial" => {
            let [d, s] = args.as_slice() else { return Err(bad()) };
            let d = d.parse().map_err(|_| bad())?;
            let s = s.parse().map_err(|_| bad())?;
            trivial(d, s)
        }
        "scaled_projection" => {
            let c: Option<Vec<Scalar>> = args.iter().map(|a| parse_rational(a)).collect();
            scaled_projection(&c.ok_or_else(bad)?)
        }
        "upper_triangular" => {
            let c: Option<Vec<Scalar>> = args.iter().map(|a| parse_rational(a)).collect();
            upper_triangular_scaled(&c.ok_or_else(bad)?)
        }
        _ => Err(bad()),
    }
}

/// Instances exercised by the property suites.
pub fn standard_catalog() -> Vec<(String, MrbAlgebraInstance)> {
    let mut out = Vec::new();
    for d in 1..=3 {
        for s in 1..=3 {
            out.push((format!("trivial({d},{s})"), trivial(d, s).expect("valid")));
        }
    }
    for c in [vec![1], vec![1, 2], vec![2, 3, 5]] {
        let name = format!(
            "scaled_projection({})",
            c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        );
        let c: Vec<Scalar> = c.into_iter().map(int).collect();
        out.push((name, scaled_projection(&c).expect("valid")));
    }
    out.push(("upper_triangular".into(), upper_triangular().expect("valid")));
    out
}

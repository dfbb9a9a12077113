//! Exchange matrices of small finite types used by tests, benches and the CLI.

use crate::exact::IntMatrix;

/// Type A₁.
pub fn a1() -> IntMatrix {
    IntMatrix::from_i64(&[&[0]])
}

/// Type A₂, linear orientation.
pub fn a2() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, 1], &[-1, 0]])
}

/// Type A₃, linearly oriented path.
pub fn a3() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]])
}

/// The rank-two matrix `[[0,-1],[2,0]]` of type B₂.
pub fn b2() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, -1], &[2, 0]])
}

/// Type B₃ (non-simply-laced, rank three).
pub fn b3() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, 1, 0], &[-1, 0, 1], &[0, -2, 0]])
}

/// Type D₄, all arrows pointing out of the central node.
pub fn d4() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, 1, 1, 1], &[-1, 0, 0, 0], &[-1, 0, 0, 0], &[-1, 0, 0, 0]])
}

/// Named fixtures of rank at most three.
pub fn small() -> Vec<(&'static str, IntMatrix)> {
    vec![("A1", a1()), ("A2", a2()), ("A3", a3()), ("B2", b2()), ("B3", b3())]
}

//! Brute-force oracle: plane-wave coefficient matching over a whole network.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use qgraph::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Free edge from vertex `from` to `to`; `gauge` is the vector-potential
/// phase per nm along the edge (ψ = e^{−i·gauge·ξ}·free solution).
#[derive(Debug, Clone, Copy)]
pub struct NetEdge {
    pub from: usize,
    pub to: usize,
    pub length: f64,
    pub gauge: f64,
}

impl NetEdge {
    pub fn new(from: usize, to: usize, length: f64) -> Self {
        NetEdge {
            from,
            to,
            length,
            gauge: 0.0,
        }
    }
}

/// Value and outward derivative at one edge end, as linear forms in the unknowns.
struct End {
    value: Vec<(usize, Complex64)>,
    value_const: Complex64,
    deriv: Vec<(usize, Complex64)>,
    deriv_const: Complex64,
}

/// (t, r) for a wave e^{ikx} incident through a lead attached at `lead_in`,
/// leaving through a lead at `lead_out`. Unknowns: r, t and (c, d) per edge
/// with ψ(ξ) = e^{−iγξ}(c e^{ikξ} + d e^{−ikξ}).
pub fn network_amplitudes(
    vertices: usize,
    edges: &[NetEdge],
    lead_in: usize,
    lead_out: usize,
    k: f64,
) -> (Complex64, Complex64) {
    let n = 2 + 2 * edges.len();
    let ik = I * k;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut ends: Vec<Vec<End>> = (0..vertices).map(|_| Vec::new()).collect();
    ends[lead_in].push(End {
        value: vec![(0, one)],
        value_const: one,
        deriv: vec![(0, ik)],
        deriv_const: -ik,
    });
    ends[lead_out].push(End {
        value: vec![(1, one)],
        value_const: zero,
        deriv: vec![(1, ik)],
        deriv_const: zero,
    });
    for (i, e) in edges.iter().enumerate() {
        let (c, d) = (2 + 2 * i, 3 + 2 * i);
        ends[e.from].push(End {
            value: vec![(c, one), (d, one)],
            value_const: zero,
            deriv: vec![(c, ik), (d, -ik)],
            deriv_const: zero,
        });
        let g = Complex64::from_polar(1.0, -e.gauge * e.length);
        let p = Complex64::from_polar(1.0, k * e.length);
        let pc = p.conj();
        ends[e.to].push(End {
            value: vec![(c, g * p), (d, g * pc)],
            value_const: zero,
            deriv: vec![(c, -g * ik * p), (d, g * ik * pc)],
            deriv_const: zero,
        });
    }
    let mut a = DMatrix::<Complex64>::zeros(n, n);
    let mut b = DVector::<Complex64>::zeros(n);
    let mut row = 0;
    for v in &ends {
        let Some(first) = v.first() else { continue };
        for other in &v[1..] {
            for &(j, c) in &other.value {
                a[(row, j)] += c;
            }
            for &(j, c) in &first.value {
                a[(row, j)] -= c;
            }
            b[row] = first.value_const - other.value_const;
            row += 1;
        }
        for end in v {
            for &(j, c) in &end.deriv {
                a[(row, j)] += c;
            }
            b[row] -= end.deriv_const;
        }
        row += 1;
    }
    assert_eq!(row, n, "network equations do not match unknowns");
    let x = a.lu().solve(&b).expect("singular network");
    (x[1], x[0])
}

/// Chain of two-arm rings joined by leads of the given lengths (zero means
/// a shared vertex). Each ring is (l1, l2, alpha); arm 1 carries +α, arm 2 −α.
pub fn ring_chain_amplitudes(
    rings: &[(f64, f64, f64)],
    links: &[f64],
    k: f64,
) -> (Complex64, Complex64) {
    let mut edges = Vec::new();
    let mut v = 0;
    for (i, &(l1, l2, alpha)) in rings.iter().enumerate() {
        if i > 0 {
            let d = links.get(i - 1).copied().unwrap_or(0.0);
            if d > 0.0 {
                edges.push(NetEdge::new(v, v + 1, d));
                v += 1;
            }
        }
        edges.push(NetEdge {
            gauge: alpha,
            ..NetEdge::new(v, v + 1, l1)
        });
        edges.push(NetEdge {
            gauge: -alpha,
            ..NetEdge::new(v, v + 1, l2)
        });
        v += 1;
    }
    network_amplitudes(v + 1, &edges, 0, v, k)
}

/// (t, r) of a square well or barrier on [0, w] by matching plane waves at
/// both ends; t is referenced at x = w.
pub fn square_profile_amplitudes(v: f64, w: f64, k: f64) -> (Complex64, Complex64) {
    let q = {
        let z = Complex64::new(k * k - v, 0.0).sqrt();
        if z.im < 0.0 {
            -z
        } else {
            z
        }
    };
    let one = Complex64::new(1.0, 0.0);
    let ik = I * k;
    let iq = I * q;
    let e = (iq * w).exp();
    let ei = (-iq * w).exp();
    // unknowns: r, A, B, t
    let a = DMatrix::from_row_slice(
        4,
        4,
        &[
            -one,
            one,
            one,
            0.0 * one,
            ik,
            iq,
            -iq,
            0.0 * one,
            0.0 * one,
            e,
            ei,
            -one,
            0.0 * one,
            iq * e,
            -iq * ei,
            -ik,
        ],
    );
    let b = DVector::from_vec(vec![one, ik, 0.0 * one, 0.0 * one]);
    let x = a.lu().solve(&b).expect("singular matching system");
    (x[3], x[0])
}

//! Symmetric Gaussian quadrature rules on triangles.
//!
//! Points are stored in barycentric coordinates and weights are normalized to
//! sum to one, so a rule integrates f over a triangle T as
//! `|T| * sum_q w_q f(x_q)`. Rules are exact for polynomials up to the stated
//! degree. Only positive-weight rules are included; requesting a degree
//! without a dedicated rule selects the next higher one.

/// A quadrature rule on the reference triangle.
#[derive(Debug, Clone)]
pub struct TriangleRule {
    /// Polynomial degree integrated exactly.
    pub degree: usize,
    /// Barycentric coordinates (λ0, λ1, λ2) of each point.
    pub points: Vec<[f64; 3]>,
    /// Weights, summing to 1.
    pub weights: Vec<f64>,
}

/// Returns the smallest available rule exact to at least `degree`.
///
/// Degrees above 10 are clamped to the degree-10 rule.
pub fn triangle_rule(degree: usize) -> TriangleRule {
    let degree = degree.max(1);
    match degree {
        1 => centroid_rule(),
        2 => from_orbits(2, &[Orbit::Sym3(2.0 / 3.0, 1.0 / 3.0)]),
        3 | 4 => from_orbits(
            4,
            &[
                Orbit::Sym3(0.108103018168070, 0.223381589678011),
                Orbit::Sym3(0.816847572980459, 0.109951743655322),
            ],
        ),
        5 => from_orbits(
            5,
            &[
                Orbit::Centroid(0.225),
                Orbit::Sym3(0.059715871789770, 0.132394152788506),
                Orbit::Sym3(0.797426985353087, 0.125939180544827),
            ],
        ),
        6 => from_orbits(
            6,
            &[
                Orbit::Sym3(0.501426509658179, 0.116786275726379),
                Orbit::Sym3(0.873821971016996, 0.050844906370207),
                Orbit::Sym6(0.053145049844817, 0.310352451033784, 0.082851075618374),
            ],
        ),
        7 | 8 => from_orbits(
            8,
            &[
                Orbit::Centroid(0.144315607677787),
                Orbit::Sym3(0.081414823414554, 0.095091634267285),
                Orbit::Sym3(0.658861384496480, 0.103217370534718),
                Orbit::Sym3(0.898905543365938, 0.032458497623198),
                Orbit::Sym6(0.008394777409958, 0.263112829634638, 0.027230314174435),
            ],
        ),
        _ => from_orbits(
            10,
            &[
                Orbit::Centroid(0.090817990382754),
                Orbit::Sym3(0.028844733232685, 0.036725957756467),
                Orbit::Sym3(0.781036849029926, 0.045321059435528),
                Orbit::Sym6(0.141707219414880, 0.307939838764121, 0.072757916845420),
                Orbit::Sym6(0.025003534762686, 0.246672560639903, 0.028327242531057),
                Orbit::Sym6(0.009540815400299, 0.066803251012200, 0.009421666963733),
            ],
        ),
    }
}

enum Orbit {
    /// Single point at the centroid with the given weight.
    Centroid(f64),
    /// Three permutations of (a, b, b) with b = (1-a)/2.
    Sym3(f64, f64),
    /// Six permutations of (a, b, c) with c = 1-a-b.
    Sym6(f64, f64, f64),
}

fn centroid_rule() -> TriangleRule {
    TriangleRule {
        degree: 1,
        points: vec![[1.0 / 3.0; 3]],
        weights: vec![1.0],
    }
}

fn from_orbits(degree: usize, orbits: &[Orbit]) -> TriangleRule {
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for orbit in orbits {
        match *orbit {
            Orbit::Centroid(w) => {
                points.push([1.0 / 3.0; 3]);
                weights.push(w);
            }
            Orbit::Sym3(a, w) => {
                let b = 0.5 * (1.0 - a);
                for p in [[a, b, b], [b, a, b], [b, b, a]] {
                    points.push(p);
                    weights.push(w);
                }
            }
            Orbit::Sym6(a, b, w) => {
                let c = 1.0 - a - b;
                for p in [
                    [a, b, c],
                    [a, c, b],
                    [b, a, c],
                    [b, c, a],
                    [c, a, b],
                    [c, b, a],
                ] {
                    points.push(p);
                    weights.push(w);
                }
            }
        }
    }
    TriangleRule {
        degree,
        points,
        weights,
    }
}

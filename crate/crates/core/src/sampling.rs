//! Floating-point sampling of the closed unit ball.
//!
//! Used only for sup-norm estimates; no exact statement depends on it.

/// Fibonacci points on the unit sphere scaled by geometric radii, plus the origin.
#[derive(Clone, Debug)]
pub struct BallGrid {
    pub sphere_points: usize,
    pub radii: Vec<f64>,
}

impl Default for BallGrid {
    fn default() -> Self {
        BallGrid::new(2562, 8)
    }
}

impl BallGrid {
    /// Radii `1, 1/2, 1/4, …`.
    pub fn new(sphere_points: usize, radii: usize) -> Self {
        BallGrid {
            sphere_points,
            radii: (0..radii).map(|k| 0.5f64.powi(k as i32)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sphere_points * self.radii.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> impl Iterator<Item = [f64; 3]> + '_ {
        let sphere = fibonacci_sphere(self.sphere_points);
        std::iter::once([0.0; 3]).chain(self.radii.iter().flat_map(move |&r| {
            sphere
                .clone()
                .into_iter()
                .map(move |p| [r * p[0], r * p[1], r * p[2]])
        }))
    }

    /// `max |f|` over the grid.
    pub fn sup(&self, f: impl Fn([f64; 3]) -> f64) -> f64 {
        self.points().map(|x| f(x).abs()).fold(0.0, f64::max)
    }
}

pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let y = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - y * y).sqrt();
            let t = golden * i as f64;
            [r * t.cos(), y, r * t.sin()]
        })
        .collect()
}

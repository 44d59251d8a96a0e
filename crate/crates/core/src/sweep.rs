//! Grid sweeps: the worst forward error `e_N = max_x |T_N(x) - T̃_N(x)| / ε_M`
//! over equally spaced points, per algorithm and degree.
//!
//! Grid points are produced in `f64` and then taken as exact inputs, so the
//! oracle evaluates at precisely the value each algorithm sees.

use rayon::prelude::*;

use crate::chebyshev::{Algorithm, Evaluator};
use crate::error::{Error, Result};
use crate::exact::DyadicEval;
use crate::stability::{certify_samples, PointSample, StabilityCertificate};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spacing {
    /// `p` points including both ends, `h = (b - a) / (p - 1)`.
    Points(usize),
    /// Fixed step `h`; the point count follows from the interval length.
    Step(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    a: f64,
    b: f64,
    spacing: Spacing,
}

impl GridSpec {
    pub fn new(a: f64, b: f64, spacing: Spacing) -> Result<Self> {
        let violations = Self::violations(a, b, spacing);
        if !violations.is_empty() {
            return Err(Error::InvalidGrid(violations.join("; ")));
        }
        Ok(GridSpec { a, b, spacing })
    }

    pub fn with_points(a: f64, b: f64, points: usize) -> Result<Self> {
        Self::new(a, b, Spacing::Points(points))
    }

    pub fn with_step(a: f64, b: f64, h: f64) -> Result<Self> {
        Self::new(a, b, Spacing::Step(h))
    }

    /// Every constraint the arguments break, for reporting all at once.
    pub fn violations(a: f64, b: f64, spacing: Spacing) -> Vec<String> {
        let mut v = Vec::new();
        if !a.is_finite() || !b.is_finite() {
            v.push(format!("interval ends must be finite, got [{a}, {b}]"));
        } else {
            if a >= b {
                v.push(format!("interval requires a < b, got a = {a}, b = {b}"));
            }
            if a < -1.0 || b > 1.0 {
                v.push(format!("interval [{a}, {b}] must lie within [-1, 1]"));
            }
        }
        match spacing {
            Spacing::Points(p) if p < 2 => v.push(format!("need at least 2 points, got {p}")),
            Spacing::Step(h) if !(h > 0.0 && h.is_finite()) => {
                v.push(format!("step must be positive and finite, got {h}"))
            }
            _ => {}
        }
        v
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    /// Number of grid points `p`.
    pub fn point_count(&self) -> usize {
        match self.spacing {
            Spacing::Points(p) => p,
            Spacing::Step(h) => {
                let intervals = (self.b - self.a) / h;
                // absorb the representation error of decimal steps like 0.01
                (intervals + 1e-9 * intervals.max(1.0)).floor() as usize + 1
            }
        }
    }

    /// Spacing `h` between consecutive points.
    pub fn step(&self) -> f64 {
        match self.spacing {
            Spacing::Points(p) => (self.b - self.a) / (p - 1) as f64,
            Spacing::Step(h) => h,
        }
    }

    /// The points `t_i = a + (i - 1) h`, never exceeding `b`. When the step
    /// divides the interval the last point is exactly `b`.
    pub fn points(&self) -> Vec<f64> {
        let p = self.point_count();
        let h = self.step();
        let mut pts: Vec<f64> = (0..p)
            .map(|i| (self.a + i as f64 * h).min(self.b))
            .collect();
        let reach = (p - 1) as f64 * h;
        if (reach - (self.b - self.a)).abs() <= 1e-9 * h {
            pts[p - 1] = self.b;
        }
        pts
    }
}

/// Builds the grid for `spec`.
pub fn make_grid(spec: &GridSpec) -> Vec<f64> {
    spec.points()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub algorithm: Algorithm,
    pub degree: u32,
    pub grid: GridSpec,
    /// Worst forward error in units of `ε_M`; infinite iff some point
    /// produced a non-finite value.
    pub e_n: f64,
    pub worst_x: f64,
    pub nonfinite_count: usize,
    pub certificate: StabilityCertificate,
}

/// Exact reference values at every grid point for one degree.
pub fn oracle_points(points: &[f64], degree: u32) -> Result<Vec<DyadicEval>> {
    points
        .par_iter()
        .map(|&x| DyadicEval::at_float(x, degree))
        .collect()
}

fn sweep_with_oracle(
    algorithm: Algorithm,
    degree: u32,
    grid: &GridSpec,
    points: &[f64],
    oracle: &[DyadicEval],
) -> Result<SweepReport> {
    let evaluator = Evaluator::new(algorithm, degree)?;
    let samples = points
        .par_iter()
        .zip(oracle.par_iter())
        .map(|(&x, o)| Ok(PointSample::new(x, o, evaluator.eval(x)?)))
        .collect::<Result<Vec<_>>>()?;
    let certificate = certify_samples(algorithm, degree, &samples)?;

    let mut e_n = 0.0;
    let mut worst_x = samples[0].x;
    for s in &samples {
        if s.forward_eps > e_n {
            e_n = s.forward_eps;
            worst_x = s.x;
        }
    }
    Ok(SweepReport {
        algorithm,
        degree,
        grid: *grid,
        e_n,
        worst_x,
        nonfinite_count: samples.iter().filter(|s| !s.is_finite()).count(),
        certificate,
    })
}

/// Runs one algorithm at one degree over the grid.
pub fn sweep(algorithm: Algorithm, degree: u32, grid: &GridSpec) -> Result<SweepReport> {
    if !algorithm.supports(degree) {
        return Err(Error::NotPowerOfTwo(degree));
    }
    let points = grid.points();
    let oracle = oracle_points(&points, degree)?;
    sweep_with_oracle(algorithm, degree, grid, &points, &oracle)
}

#[derive(Debug, Clone, PartialEq)]
pub enum TableCell {
    Done(Box<SweepReport>),
    /// The algorithm cannot run at this degree.
    Skipped {
        algorithm: Algorithm,
        degree: u32,
    },
}

impl TableCell {
    pub fn report(&self) -> Option<&SweepReport> {
        match self {
            TableCell::Done(r) => Some(r),
            TableCell::Skipped { .. } => None,
        }
    }
}

/// Sweeps for every (degree, algorithm) pair: rows follow `degrees`, columns
/// follow `algorithms`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub algorithms: Vec<Algorithm>,
    pub degrees: Vec<u32>,
    pub grid: GridSpec,
    pub rows: Vec<Vec<TableCell>>,
}

impl ComparisonTable {
    pub fn cell(&self, degree: u32, algorithm: Algorithm) -> Option<&TableCell> {
        let r = self.degrees.iter().position(|&d| d == degree)?;
        let c = self.algorithms.iter().position(|&a| a == algorithm)?;
        Some(&self.rows[r][c])
    }

    pub fn report(&self, degree: u32, algorithm: Algorithm) -> Option<&SweepReport> {
        self.cell(degree, algorithm)?.report()
    }

    pub fn reports(&self) -> impl Iterator<Item = &SweepReport> {
        self.rows.iter().flatten().filter_map(TableCell::report)
    }
}

/// Builds the full table. The oracle runs once per degree and is shared by
/// every algorithm in that row.
pub fn compare_table(
    algorithms: &[Algorithm],
    degrees: &[u32],
    grid: &GridSpec,
) -> Result<ComparisonTable> {
    if algorithms.is_empty() || degrees.is_empty() {
        return Err(Error::Precondition(
            "a comparison table needs at least one algorithm and one degree".into(),
        ));
    }
    let points = grid.points();
    let mut rows = Vec::with_capacity(degrees.len());
    for &degree in degrees {
        let oracle = oracle_points(&points, degree)?;
        let row = algorithms
            .iter()
            .map(|&algorithm| {
                if !algorithm.supports(degree) {
                    return Ok(TableCell::Skipped { algorithm, degree });
                }
                let r = sweep_with_oracle(algorithm, degree, grid, &points, &oracle)?;
                Ok(TableCell::Done(Box::new(r)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(ComparisonTable {
        algorithms: algorithms.to_vec(),
        degrees: degrees.to_vec(),
        grid: *grid,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_examples() {
        let g = GridSpec::with_step(-1.0, 1.0, 1.0).unwrap();
        assert_eq!(make_grid(&g), vec![-1.0, 0.0, 1.0]);

        let g = GridSpec::with_step(-1.0, 1.0, 0.01).unwrap();
        let pts = make_grid(&g);
        assert_eq!(pts.len(), 201);
        assert_eq!(pts[0], -1.0);
        assert_eq!(pts[100], 0.0);
        assert_eq!(pts[200], 1.0);

        let g = GridSpec::with_step(-0.8, -0.6, 0.001).unwrap();
        let pts = make_grid(&g);
        assert_eq!(pts.len(), 201);
        assert_eq!(pts[0], -0.8);
        assert_eq!(pts[200], -0.6);

        let g = GridSpec::with_points(-0.5, 0.5, 5).unwrap();
        assert_eq!(make_grid(&g), vec![-0.5, -0.25, 0.0, 0.25, 0.5]);
    }

    #[test]
    fn grid_with_ragged_step_stops_short() {
        let g = GridSpec::with_step(0.0, 1.0, 0.3).unwrap();
        let pts = make_grid(&g);
        assert_eq!(pts.len(), 4);
        assert!(pts[3] < 1.0 && pts[3] > 0.89);
    }

    #[test]
    fn grid_rejections() {
        assert!(GridSpec::with_step(1.0, -1.0, 0.1).is_err());
        assert!(GridSpec::with_step(0.5, 0.5, 0.1).is_err());
        assert!(GridSpec::with_points(-1.0, 1.0, 1).is_err());
        assert!(GridSpec::with_step(-1.0, 1.0, 0.0).is_err());
        assert!(GridSpec::with_step(-1.0, 1.0, -0.1).is_err());
        assert!(GridSpec::with_step(-2.0, 1.0, 0.1).is_err());
        let v = GridSpec::violations(1.0, -1.0, Spacing::Points(0));
        assert_eq!(v.len(), 2, "{v:?}");
    }

    #[test]
    fn degree_one_is_exact() {
        let g = GridSpec::with_points(-1.0, 1.0, 3).unwrap();
        for alg in [
            Algorithm::Recurrence,
            Algorithm::Doubling,
            Algorithm::Horner,
        ] {
            let r = sweep(alg, 1, &g).unwrap();
            assert_eq!(r.e_n, 0.0, "{alg}");
        }
    }

    #[test]
    fn recurrence_table_one_row() {
        let g = GridSpec::with_step(-1.0, 1.0, 0.01).unwrap();
        let r = sweep(Algorithm::Recurrence, 8, &g).unwrap();
        assert!(r.e_n <= 84.0);
        assert!(r.e_n > 0.0);
        assert_eq!(r.nonfinite_count, 0);
        assert!(r.certificate.passed);
    }

    #[test]
    fn horner_nan_row() {
        let g = GridSpec::with_step(-1.0, 1.0, 0.01).unwrap();
        let r = sweep(Algorithm::Horner, 1024, &g).unwrap();
        assert!(r.nonfinite_count > 0);
        assert_eq!(r.e_n, f64::INFINITY);
        assert!(!r.certificate.passed);
    }

    #[test]
    fn sweep_rejects_incompatible_degree() {
        let g = GridSpec::with_points(-1.0, 1.0, 3).unwrap();
        assert_eq!(
            sweep(Algorithm::Doubling, 6, &g).unwrap_err(),
            Error::NotPowerOfTwo(6)
        );
    }

    #[test]
    fn table_shape_and_skips() {
        let g = GridSpec::with_points(-1.0, 1.0, 3).unwrap();
        let t = compare_table(&[Algorithm::Recurrence], &[2], &g).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].len(), 1);

        let g = GridSpec::with_step(-1.0, 1.0, 0.05).unwrap();
        let t = compare_table(&Algorithm::ALL, &[3, 4, 5], &g).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(matches!(
            t.cell(3, Algorithm::Doubling),
            Some(TableCell::Skipped { degree: 3, .. })
        ));
        assert!(t.report(4, Algorithm::Doubling).is_some());
        assert_eq!(t.reports().count(), 10);

        assert!(compare_table(&[], &[2], &g).is_err());
        assert!(compare_table(&[Algorithm::Trig], &[], &g).is_err());
    }

    #[test]
    fn sweep_matches_table_cell() {
        let g = GridSpec::with_step(-1.0, 1.0, 0.02).unwrap();
        let t = compare_table(&[Algorithm::Trig], &[16], &g).unwrap();
        let r = sweep(Algorithm::Trig, 16, &g).unwrap();
        assert_eq!(t.report(16, Algorithm::Trig).unwrap(), &r);
    }
}

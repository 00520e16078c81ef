use num_complex::Complex64;
use serde::Serialize;

/// Default relative imaginary-part tolerance for ξ.
pub const DEFAULT_TOL_IM: f64 = 1e-9;
/// Default half-width of the band around ξ = 0 treated as the transition.
pub const DEFAULT_TOL_BOUNDARY: f64 = 1e-9;
/// Relative distance below which two polished roots count as one repeated root.
pub const MERGE_DISTANCE: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Unbroken,
    Broken,
    Boundary,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Unbroken => "Unbroken",
            Verdict::Broken => "Broken",
            Verdict::Boundary => "Boundary",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub tol_im: f64,
    pub tol_boundary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { tol_im: DEFAULT_TOL_IM, tol_boundary: DEFAULT_TOL_BOUNDARY }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumClassification {
    /// `±√ξ` for every ξ, in the order of `xis`.
    pub lambdas: Vec<Complex64>,
    pub xis: Vec<Complex64>,
    pub verdict: Verdict,
    pub tolerances: Tolerances,
    /// Groups of ξ indices merged as a repeated root.
    pub repeated: Vec<Vec<usize>>,
}

/// Groups indices of values closer than [`MERGE_DISTANCE`] (relative to
/// `max(1, |a|, |b|)`), transitively.
pub fn find_repeated(values: &[Complex64]) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn root(group: &mut [usize], mut i: usize) -> usize {
        while group[i] != i {
            group[i] = group[group[i]];
            i = group[i];
        }
        i
    }
    for a in 0..n {
        for b in a + 1..n {
            let scale = 1f64.max(values[a].norm()).max(values[b].norm());
            if (values[a] - values[b]).norm() < MERGE_DISTANCE * scale {
                let (ra, rb) = (root(&mut group, a), root(&mut group, b));
                group[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = root(&mut group, i);
        match out.iter_mut().find(|g| g[0] == r) {
            Some(g) => g.push(i),
            None => out.push(vec![i]),
        }
    }
    out.retain(|g| g.len() > 1);
    out
}

/// Unbroken when every ξ is real and positive, Broken when some ξ is
/// definitely complex or negative, Boundary otherwise.
///
/// Repeated ξ are replaced by their mean before testing and force Boundary
/// unless some other ξ already makes the spectrum Broken.
pub fn classify_spectrum(xis: &[Complex64], tolerances: Tolerances) -> SpectrumClassification {
    let Tolerances { tol_im, tol_boundary } = tolerances;
    let repeated = find_repeated(xis);
    let mut representatives: Vec<Complex64> = Vec::new();
    let mut seen = vec![false; xis.len()];
    for g in &repeated {
        let mean = g.iter().map(|&i| xis[i]).sum::<Complex64>() / g.len() as f64;
        representatives.push(mean);
        g.iter().for_each(|&i| seen[i] = true);
    }
    representatives.extend(xis.iter().enumerate().filter(|(i, _)| !seen[*i]).map(|(_, x)| *x));

    let non_real = |x: &Complex64| x.im.abs() > tol_im * (1.0 + x.norm());
    let broken = representatives.iter().any(|x| non_real(x) || x.re < -tol_boundary);
    let near_zero = representatives.iter().any(|x| x.re.abs() <= tol_boundary);
    let verdict = if broken {
        Verdict::Broken
    } else if near_zero || !repeated.is_empty() {
        Verdict::Boundary
    } else {
        Verdict::Unbroken
    };

    let lambdas = xis
        .iter()
        .flat_map(|x| {
            let s = x.sqrt();
            [s, -s]
        })
        .collect();
    SpectrumClassification { lambdas, xis: xis.to_vec(), verdict, tolerances, repeated }
}

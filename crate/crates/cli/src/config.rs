//! Run configuration: an INI file with fixed sections, overridden by flags.
//!
//! ```ini
//! [run]
//! n = 3
//! seed = 7
//!
//! [field]
//! kind = ads
//! mass = 1.0
//! ```

use std::path::{Path, PathBuf};

use ini::Ini;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    Ads { mass: f64 },
    /// AdS slope whose mass function rises by `amount` over `width`.
    RampedAds { mass: f64, amount: f64, width: f64 },
    /// AdS height plus a Gaussian bump centred `offset` outside the horizon.
    BumpedAds { mass: f64, amplitude: f64, offset: f64, width: f64 },
    Exponential { a: f64, k: f64 },
    Gaussian { a: f64, center: f64, width: f64 },
    Linear { a: f64, b: f64 },
    Cosh { a: f64 },
    CompactBump { a: f64, center: f64, width: f64 },
    TiltedBump { a: f64, center: f64, width: f64, tilt: f64 },
    Zero,
}

impl FieldSpec {
    pub fn has_horizon(&self) -> bool {
        matches!(
            self,
            FieldSpec::Ads { .. } | FieldSpec::RampedAds { .. } | FieldSpec::BumpedAds { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            FieldSpec::Ads { .. } => "ads",
            FieldSpec::RampedAds { .. } => "ramped-ads",
            FieldSpec::BumpedAds { .. } => "bumped-ads",
            FieldSpec::Exponential { .. } => "exponential",
            FieldSpec::Gaussian { .. } => "gaussian",
            FieldSpec::Linear { .. } => "linear",
            FieldSpec::Cosh { .. } => "cosh",
            FieldSpec::CompactBump { .. } => "compact-bump",
            FieldSpec::TiltedBump { .. } => "tilted-bump",
            FieldSpec::Zero => "zero",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceSpec {
    /// The built-in sample suite for the run dimension.
    Suite,
    /// Origin-centred sphere of area radius `rho = sinh r`.
    Sphere { rho: f64 },
    CosSeries { coefficients: Vec<f64> },
    OffCenter { radius: f64, offset: f64 },
    Tilted { scale: f64, eps: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub sphere_order: usize,
    pub boundary_order: usize,
    pub radial_panels: usize,
    pub radial_points: usize,
    pub height_panels: usize,
    pub height_points: usize,
    pub fd_step: f64,
    pub richardson: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            sphere_order: 16,
            boundary_order: 32,
            radial_panels: 32,
            radial_points: 16,
            height_panels: 16,
            height_points: 16,
            fd_step: 1e-3,
            richardson: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzSpec {
    pub count: usize,
    pub min_n: usize,
    pub max_n: usize,
    /// Every `equality_every`-th matrix is built as an equality case.
    pub equality_every: usize,
}

impl Default for FuzzSpec {
    fn default() -> Self {
        FuzzSpec {
            count: 10_000,
            min_n: 2,
            max_n: 6,
            equality_every: 50,
        }
    }
}

/// Every tolerance a verdict is judged against, before `tol_scale`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    pub mass_relative: f64,
    pub decomposition: f64,
    pub scal: f64,
    pub curvature: f64,
    pub divergence: f64,
    pub stokes: f64,
    pub int_hv: f64,
    pub transform: f64,
    pub level_set: f64,
    pub level_set_equality: f64,
    pub equality: f64,
    pub inequality: f64,
    pub horizon: f64,
    pub round_trip: f64,
    pub spatial: f64,
    pub self_check: f64,
    pub matrix_identity: f64,
    pub matrix_gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            mass_relative: 1e-2,
            decomposition: 1e-2,
            scal: 1e-8,
            curvature: 1e-6,
            divergence: 1e-6,
            stokes: 1e-4,
            int_hv: 1e-7,
            transform: 1e-8,
            level_set: 1e-9,
            level_set_equality: 1e-8,
            equality: 1e-8,
            inequality: 1e-9,
            horizon: 1e-12,
            round_trip: 1e-10,
            spatial: 1e-8,
            self_check: 1e-6,
            matrix_identity: 1e-11,
            matrix_gap: 1e-12,
        }
    }
}

macro_rules! tolerance_fields {
    ($m:ident) => {
        $m!(
            mass_relative, decomposition, scal, curvature, divergence, stokes, int_hv,
            transform, level_set, level_set_equality, equality, inequality, horizon,
            round_trip, spatial, self_check, matrix_identity, matrix_gap
        )
    };
}

impl Tolerances {
    pub fn scaled(&self, s: f64) -> Tolerances {
        let mut t = self.clone();
        macro_rules! scale {
            ($($f:ident),*) => { $( t.$f *= s; )* };
        }
        tolerance_fields!(scale);
        t
    }

    fn set(&mut self, key: &str, value: f64) -> bool {
        macro_rules! assign {
            ($($f:ident),*) => {
                match key {
                    $( stringify!($f) => { self.$f = value; true } )*
                    _ => false,
                }
            };
        }
        tolerance_fields!(assign)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub tol_scale: f64,
    pub field: Option<FieldSpec>,
    pub surface: SurfaceSpec,
    pub quadrature: QuadratureSpec,
    /// Area radii `sinh r` of the spheres the mass is extrapolated from.
    pub radii: Vec<f64>,
    /// Area radius at which exterior bulk integrals are cut off.
    pub r_max: f64,
    pub fuzz: FuzzSpec,
    pub tolerances: Tolerances,
    /// Test hook: feed inconsistent cached norms into the curvature checks.
    pub corrupt_jet: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 3,
            seed: 20_240_917,
            out: None,
            tol_scale: 1.0,
            field: None,
            surface: SurfaceSpec::Suite,
            quadrature: QuadratureSpec::default(),
            radii: vec![10.0, 20.0, 40.0, 80.0],
            r_max: 80.0,
            fuzz: FuzzSpec::default(),
            tolerances: Tolerances::default(),
            corrupt_jet: false,
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub tol_scale: Option<f64>,
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("run", &["n", "seed", "out", "tol_scale"]),
    ("field", &["kind", "mass", "amount", "width", "amplitude", "offset", "a", "k", "b", "center", "tilt"]),
    ("surface", &["kind", "rho", "coefficients", "radius", "offset", "scale", "eps"]),
    (
        "quadrature",
        &[
            "sphere_order", "boundary_order", "radial_panels", "radial_points", "height_panels",
            "height_points", "fd_step", "richardson",
        ],
    ),
    ("radii", &["values", "r_max"]),
    ("fuzz", &["count", "min_n", "max_n", "equality_every"]),
    ("tolerances", &[]),
    ("debug", &["corrupt_jet"]),
];

/// Values of one section, consumed key by key so leftovers can be reported.
struct Section<'a> {
    name: &'a str,
    entries: Vec<(&'a str, &'a str)>,
}

impl<'a> Section<'a> {
    fn take(&mut self, key: &str) -> Option<&'a str> {
        let i = self.entries.iter().position(|(k, _)| *k == key)?;
        Some(self.entries.remove(i).1)
    }

    fn f64(&mut self, key: &str) -> CliResult<Option<f64>> {
        self.take(key).map(|v| parse_f64(self.name, key, v)).transpose()
    }

    fn req_f64(&mut self, key: &str, default: f64) -> CliResult<f64> {
        Ok(self.f64(key)?.unwrap_or(default))
    }

    fn usize(&mut self, key: &str) -> CliResult<Option<usize>> {
        self.take(key)
            .map(|v| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| bad_value(self.name, key, v, "a non-negative integer"))
            })
            .transpose()
    }

    fn leftover(&self, context: &str) -> CliResult<()> {
        match self.entries.first() {
            None => Ok(()),
            Some((k, _)) => Err(CliError::config(format!(
                "key '{k}' is not valid in [{}]{context}",
                self.name
            ))),
        }
    }
}

fn bad_value(section: &str, key: &str, value: &str, expected: &str) -> CliError {
    CliError::config(format!("[{section}] {key} = '{value}': expected {expected}"))
}

fn parse_f64(section: &str, key: &str, value: &str) -> CliResult<f64> {
    match value.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(bad_value(section, key, value, "a finite number")),
    }
}

fn parse_bool(section: &str, key: &str, value: &str) -> CliResult<bool> {
    match value.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(bad_value(section, key, value, "true or false")),
    }
}

fn parse_list(section: &str, key: &str, value: &str) -> CliResult<Vec<f64>> {
    value
        .split(',')
        .map(|v| parse_f64(section, key, v))
        .collect()
}

fn in_range<T: PartialOrd + std::fmt::Display>(what: &str, x: T, lo: T, hi: T) -> CliResult<T> {
    if x >= lo && x <= hi {
        Ok(x)
    } else {
        Err(CliError::config(format!("{what} = {x} outside [{lo}, {hi}]")))
    }
}

fn positive(what: &str, x: f64) -> CliResult<f64> {
    if x > 0.0 {
        Ok(x)
    } else {
        Err(CliError::config(format!("{what} = {x} must be positive")))
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> CliResult<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_ini_str(&text)
    }

    pub fn from_ini_str(text: &str) -> CliResult<RunConfig> {
        let ini = Ini::load_from_str(text)?;
        let mut cfg = RunConfig::default();
        let mut seen = Vec::new();
        for (name, props) in ini.iter() {
            let Some(name) = name else {
                if let Some((k, _)) = props.iter().next() {
                    return Err(CliError::config(format!("key '{k}' appears before any section")));
                }
                continue;
            };
            let Some((_, allowed)) = SECTIONS.iter().find(|(s, _)| *s == name) else {
                return Err(CliError::config(format!("unknown section [{name}]")));
            };
            if seen.contains(&name) {
                return Err(CliError::config(format!("section [{name}] appears twice")));
            }
            seen.push(name);
            let mut entries: Vec<(&str, &str)> = Vec::new();
            for (k, v) in props.iter() {
                if name != "tolerances" && !allowed.contains(&k) {
                    return Err(CliError::config(format!("unknown key '{k}' in [{name}]")));
                }
                if entries.iter().any(|(e, _)| *e == k) {
                    return Err(CliError::config(format!("key '{k}' repeated in [{name}]")));
                }
                entries.push((k, v));
            }
            let mut sec = Section { name, entries };
            match name {
                "run" => cfg.read_run(&mut sec)?,
                "field" => cfg.field = Some(read_field(&mut sec)?),
                "surface" => cfg.surface = read_surface(&mut sec)?,
                "quadrature" => cfg.read_quadrature(&mut sec)?,
                "radii" => cfg.read_radii(&mut sec)?,
                "fuzz" => cfg.read_fuzz(&mut sec)?,
                "tolerances" => {
                    for (k, v) in std::mem::take(&mut sec.entries) {
                        let x = positive(k, parse_f64(name, k, v)?)?;
                        if !cfg.tolerances.set(k, x) {
                            return Err(CliError::config(format!("unknown key '{k}' in [tolerances]")));
                        }
                    }
                }
                "debug" => {
                    if let Some(v) = sec.take("corrupt_jet") {
                        cfg.corrupt_jet = parse_bool(name, "corrupt_jet", v)?;
                    }
                }
                _ => unreachable!("section list and dispatch disagree"),
            }
            sec.leftover("")?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) -> CliResult<()> {
        if let Some(n) = o.n {
            self.n = n;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(p) = &o.out {
            self.out = Some(p.clone());
        }
        if let Some(t) = o.tol_scale {
            self.tol_scale = t;
        }
        self.validate()
    }

    /// Tolerances after `tol_scale`.
    pub fn tol(&self) -> Tolerances {
        self.tolerances.scaled(self.tol_scale)
    }

    fn read_run(&mut self, sec: &mut Section) -> CliResult<()> {
        if let Some(n) = sec.usize("n")? {
            self.n = n;
        }
        if let Some(v) = sec.take("seed") {
            self.seed = v
                .trim()
                .parse()
                .map_err(|_| bad_value("run", "seed", v, "an unsigned 64-bit integer"))?;
        }
        if let Some(v) = sec.take("out") {
            self.out = Some(PathBuf::from(v.trim()));
        }
        if let Some(t) = sec.f64("tol_scale")? {
            self.tol_scale = t;
        }
        Ok(())
    }

    fn read_quadrature(&mut self, sec: &mut Section) -> CliResult<()> {
        let q = &mut self.quadrature;
        macro_rules! int {
            ($($f:ident),*) => { $( if let Some(x) = sec.usize(stringify!($f))? { q.$f = x; } )* };
        }
        int!(sphere_order, boundary_order, radial_panels, radial_points, height_panels, height_points);
        if let Some(h) = sec.f64("fd_step")? {
            q.fd_step = h;
        }
        if let Some(v) = sec.take("richardson") {
            q.richardson = parse_bool("quadrature", "richardson", v)?;
        }
        Ok(())
    }

    fn read_radii(&mut self, sec: &mut Section) -> CliResult<()> {
        if let Some(v) = sec.take("values") {
            self.radii = parse_list("radii", "values", v)?;
        }
        if let Some(r) = sec.f64("r_max")? {
            self.r_max = r;
        }
        Ok(())
    }

    fn read_fuzz(&mut self, sec: &mut Section) -> CliResult<()> {
        let f = &mut self.fuzz;
        macro_rules! int {
            ($($k:ident),*) => { $( if let Some(x) = sec.usize(stringify!($k))? { f.$k = x; } )* };
        }
        int!(count, min_n, max_n, equality_every);
        Ok(())
    }

    pub fn validate(&self) -> CliResult<()> {
        in_range("n", self.n, 2, 7)?;
        positive("tol_scale", self.tol_scale)?;
        let q = &self.quadrature;
        in_range("sphere_order", q.sphere_order, 2, 128)?;
        in_range("boundary_order", q.boundary_order, 2, 128)?;
        in_range("radial_panels", q.radial_panels, 1, 4096)?;
        in_range("radial_points", q.radial_points, 1, 64)?;
        in_range("height_panels", q.height_panels, 1, 4096)?;
        in_range("height_points", q.height_points, 1, 64)?;
        in_range("fd_step", q.fd_step, 1e-6, 0.1)?;
        if self.radii.len() < 3 {
            return Err(CliError::config("the radii ladder needs at least 3 values"));
        }
        if !(self.radii[0] > 0.0 && self.radii.windows(2).all(|w| w[1] > w[0])) {
            return Err(CliError::config("radii must be positive and strictly increasing"));
        }
        in_range("r_max", self.r_max, 1.0, 1e6)?;
        let f = &self.fuzz;
        in_range("fuzz count", f.count, 1, 10_000_000)?;
        in_range("fuzz min_n", f.min_n, 2, 7)?;
        in_range("fuzz max_n", f.max_n, f.min_n, 7)?;
        in_range("fuzz equality_every", f.equality_every, 1, 10_000_000)?;
        if let SurfaceSpec::Tilted { .. } = self.surface {
            if self.n != 3 {
                return Err(CliError::config("tilted surfaces need n = 3"));
            }
        }
        Ok(())
    }
}

fn read_field(sec: &mut Section) -> CliResult<FieldSpec> {
    let kind = sec.take("kind").ok_or_else(|| CliError::config("[field] needs a kind"))?;
    let kind = kind.trim();
    let mass = |sec: &mut Section| -> CliResult<f64> {
        let m = sec.req_f64("mass", 1.0)?;
        if m > 0.0 {
            Ok(m)
        } else {
            Err(CliError::config(format!("[field] mass = {m}: the AdS mass must be positive")))
        }
    };
    let spec = match kind {
        "ads" => FieldSpec::Ads { mass: mass(sec)? },
        "ramped-ads" => FieldSpec::RampedAds {
            mass: mass(sec)?,
            amount: sec.req_f64("amount", 0.3)?,
            width: positive("[field] width", sec.req_f64("width", 1.0)?)?,
        },
        "bumped-ads" => FieldSpec::BumpedAds {
            mass: mass(sec)?,
            amplitude: sec.req_f64("amplitude", 0.05)?,
            offset: positive("[field] offset", sec.req_f64("offset", 0.6)?)?,
            width: positive("[field] width", sec.req_f64("width", 0.25)?)?,
        },
        "exponential" => FieldSpec::Exponential {
            a: sec.req_f64("a", 0.5)?,
            k: sec.req_f64("k", 1.0)?,
        },
        "gaussian" => FieldSpec::Gaussian {
            a: sec.req_f64("a", 0.3)?,
            center: sec.req_f64("center", 1.2)?,
            width: positive("[field] width", sec.req_f64("width", 0.6)?)?,
        },
        "linear" => FieldSpec::Linear {
            a: sec.req_f64("a", 0.1)?,
            b: sec.req_f64("b", 0.4)?,
        },
        "cosh" => FieldSpec::Cosh { a: sec.req_f64("a", 0.1)? },
        "compact-bump" => FieldSpec::CompactBump {
            a: sec.req_f64("a", 0.3)?,
            center: sec.req_f64("center", 1.5)?,
            width: positive("[field] width", sec.req_f64("width", 0.8)?)?,
        },
        "tilted-bump" => FieldSpec::TiltedBump {
            a: sec.req_f64("a", 0.3)?,
            center: sec.req_f64("center", 1.0)?,
            width: positive("[field] width", sec.req_f64("width", 0.6)?)?,
            tilt: sec.req_f64("tilt", 0.4)?,
        },
        "zero" => FieldSpec::Zero,
        other => return Err(CliError::config(format!("unknown field kind '{other}'"))),
    };
    sec.leftover(&format!(" for field kind '{kind}'"))?;
    if let FieldSpec::RampedAds { mass, amount, .. } = spec {
        if mass + amount <= 0.0 {
            return Err(CliError::config("[field] mass + amount must be positive"));
        }
    }
    Ok(spec)
}

fn read_surface(sec: &mut Section) -> CliResult<SurfaceSpec> {
    let kind = sec.take("kind").unwrap_or("suite").trim();
    let spec = match kind {
        "suite" => SurfaceSpec::Suite,
        "sphere" => SurfaceSpec::Sphere {
            rho: positive("[surface] rho", sec.req_f64("rho", 1.0)?)?,
        },
        "cos-series" => {
            let v = sec
                .take("coefficients")
                .ok_or_else(|| CliError::config("[surface] cos-series needs coefficients"))?;
            let c = parse_list("surface", "coefficients", v)?;
            in_range("number of coefficients", c.len(), 1, 64)?;
            SurfaceSpec::CosSeries { coefficients: c }
        }
        "off-center" => SurfaceSpec::OffCenter {
            radius: positive("[surface] radius", sec.req_f64("radius", 1.0)?)?,
            offset: sec.req_f64("offset", 0.3)?,
        },
        "tilted" => SurfaceSpec::Tilted {
            scale: positive("[surface] scale", sec.req_f64("scale", 1.0)?)?,
            eps: sec.req_f64("eps", 0.1)?,
        },
        other => return Err(CliError::config(format!("unknown surface kind '{other}'"))),
    };
    sec.leftover(&format!(" for surface kind '{kind}'"))?;
    Ok(spec)
}

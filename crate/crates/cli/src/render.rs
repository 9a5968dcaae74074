//! SVG, TikZ and plain-text drawings of the cross-section picture.
//!
//! All geometry is exact until a coordinate is written out.

use std::fmt::Write as _;

use quotnef::cones::Cone;
use quotnef::quot::{Picture, Report};
use quotnef::{Rat, RatMat, RatVec};

use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
const PLACES: usize = 6;

/// Viewbox positions of the frame vertices `A`, `B`, `C`.
const FRAME: [(i64, i64); 3] = [(300, 60), (60, 540), (540, 540)];

pub struct Scene<'a> {
    pub g: u32,
    pub d: u32,
    pub n: u32,
    pub picture: &'a Picture,
    /// Barycentric weights of the upper-bound section, in cyclic order.
    pub upper: Option<Vec<Vec<Rat>>>,
    pub lower: Option<Vec<Vec<Rat>>>,
}

impl<'a> Scene<'a> {
    pub fn from_report(report: &'a Report) -> Result<Scene<'a>, CliError> {
        let picture = report
            .picture
            .as_ref()
            .ok_or_else(|| CliError::Usage("no picture for these parameters: it needs g >= 1 and d >= 2".into()))?;
        let frame = RatMat::from_columns(
            &["A", "B", "C"].map(|l| picture.point(l).expect("frame point").class.clone()),
        )?;
        let section = |c: &Option<Cone>| c.as_ref().and_then(|c| section_polygon(c, &frame));
        Ok(Scene {
            g: report.params.g,
            d: report.params.d,
            n: report.params.n.unwrap_or(0),
            picture,
            upper: section(&report.upper),
            lower: section(&report.lower),
        })
    }

    fn header(&self) -> String {
        format!("quotnef {VERSION} cross-section g={} d={} n={}", self.g, self.d, self.n)
    }
}

/// The polygon cut out of a pointed 3-dimensional cone by the plane of
/// weight-sum 1, or `None` if some ray misses that plane.
fn section_polygon(cone: &Cone, frame: &RatMat) -> Option<Vec<Vec<Rat>>> {
    if cone.ambient_dim() != 3 || !cone.is_pointed() || !cone.is_full_dimensional() {
        return None;
    }
    let rays = cone.rays();
    let on = |f: &RatVec| -> Vec<usize> { (0..rays.len()).filter(|&i| f.dot(&rays[i]).is_zero()).collect() };
    let edges: Vec<Vec<usize>> = cone.facets().iter().map(on).collect();
    // Walk the facets: each one holds exactly two rays.
    let mut order = vec![0];
    while order.len() < rays.len() {
        let last = *order.last().unwrap();
        let next = edges
            .iter()
            .filter(|e| e.len() == 2 && e.contains(&last))
            .map(|e| if e[0] == last { e[1] } else { e[0] })
            .find(|i| !order.contains(i))?;
        order.push(next);
    }
    order
        .into_iter()
        .map(|i| {
            let w = frame.solve(&rays[i]).ok()?;
            let s: Rat = w.iter().sum();
            if !s.is_positive() {
                return None;
            }
            Some(w.iter().map(|x| x / &s).collect())
        })
        .collect()
}

fn position(weights: &[Rat]) -> (Rat, Rat) {
    let mut x = Rat::zero();
    let mut y = Rat::zero();
    for (w, &(fx, fy)) in weights.iter().zip(FRAME.iter()) {
        x += &(w * &Rat::int(fx));
        y += &(w * &Rat::int(fy));
    }
    (x, y)
}

fn fmt_pos(weights: &[Rat], sep: &str) -> String {
    let (x, y) = position(weights);
    format!("{}{sep}{}", x.to_decimal(PLACES), y.to_decimal(PLACES))
}

fn weights_text(w: &[Rat]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn legend(scene: &Scene) -> Vec<String> {
    let p = scene.picture;
    let mut lines = vec![
        format!("tau = {} (printed {})", p.tau, p.tau_printed),
        format!("rho = {} (printed {})", p.rho, p.rho_printed),
    ];
    for label in ["D", "E"] {
        if let Some(pt) = p.point(label) {
            lines.push(format!("{label} = ({}) in A, B, C", weights_text(&pt.weights)));
        }
    }
    if p.e_equals_a {
        lines.push("E = A".into());
    }
    if p.rho_discrepancy {
        lines.push("printed rho disagrees with kappa_2".into());
    }
    lines
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn svg(scene: &Scene) -> String {
    let mut s = String::new();
    let poly = |ws: &[Vec<Rat>]| ws.iter().map(|w| fmt_pos(w, ",")).collect::<Vec<_>>().join(" ");
    let frame: Vec<Vec<Rat>> = (0..3).map(|i| RatVec::unit(3, i).into_entries()).collect();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(s, "<!-- {} -->", scene.header()).unwrap();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 600 600\" width=\"600\" height=\"600\">\n");
    s.push_str("<rect width=\"600\" height=\"600\" fill=\"white\"/>\n");
    if let Some(lower) = &scene.lower {
        writeln!(s, "<polygon class=\"lower\" points=\"{}\" fill=\"#d9d9d9\" stroke=\"#808080\"/>", poly(lower)).unwrap();
    }
    writeln!(
        s,
        "<polygon class=\"frame\" points=\"{}\" fill=\"none\" stroke=\"#808080\" stroke-dasharray=\"6 4\"/>",
        poly(&frame)
    )
    .unwrap();
    if let Some(upper) = &scene.upper {
        writeln!(s, "<polygon class=\"upper\" points=\"{}\" fill=\"none\" stroke=\"black\"/>", poly(upper)).unwrap();
    }
    for pt in &scene.picture.points {
        let (x, y) = position(&pt.weights);
        let (x, y) = (x.to_decimal(PLACES), y.to_decimal(PLACES));
        writeln!(s, "<circle cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"black\"/>").unwrap();
        writeln!(
            s,
            "<text x=\"{x}\" y=\"{y}\" dx=\"8\" dy=\"-8\" font-family=\"serif\" font-size=\"18\">{}</text>",
            escape(&pt.label)
        )
        .unwrap();
    }
    s.push_str("<g class=\"legend\" font-family=\"monospace\" font-size=\"12\">\n");
    for (i, line) in legend(scene).iter().enumerate() {
        writeln!(s, "<text x=\"10\" y=\"{}\">{}</text>", 20 + 16 * i, escape(line)).unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub fn tikz(scene: &Scene) -> String {
    let mut s = String::new();
    let path = |ws: &[Vec<Rat>]| {
        ws.iter()
            .map(|w| format!("({})", fmt_pos(w, ",")))
            .collect::<Vec<_>>()
            .join(" -- ")
    };
    let frame: Vec<Vec<Rat>> = (0..3).map(|i| RatVec::unit(3, i).into_entries()).collect();
    writeln!(s, "% {}", scene.header()).unwrap();
    s.push_str("\\begin{tikzpicture}[x=0.01cm, y=-0.01cm]\n");
    if let Some(lower) = &scene.lower {
        writeln!(s, "  \\filldraw[fill=gray!30, draw=gray] {} -- cycle;", path(lower)).unwrap();
    }
    writeln!(s, "  \\draw[dashed, gray] {} -- cycle;", path(&frame)).unwrap();
    if let Some(upper) = &scene.upper {
        writeln!(s, "  \\draw {} -- cycle;", path(upper)).unwrap();
    }
    for pt in &scene.picture.points {
        writeln!(
            s,
            "  \\fill ({}) circle (2pt) node[above right] {{${}$}};",
            fmt_pos(&pt.weights, ","),
            pt.label
        )
        .unwrap();
    }
    for (i, line) in legend(scene).iter().enumerate() {
        writeln!(s, "  \\node[anchor=west, font=\\small] at (10,{}) {{{}}};", 20 + 16 * i, line).unwrap();
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}

pub fn table(scene: &Scene) -> String {
    let mut s = String::new();
    writeln!(s, "# {}", scene.header()).unwrap();
    s.push_str("frame: A = O(1) + mu0 L0, B = theta_d, C = L0\n");
    if scene.g == 1 {
        s.push_str("g = 1: Δ_d/2 = L₀, so upper, lower and exact cones coincide\n");
    }
    writeln!(s, "{:<6}{:<28}weights (A, B, C)", "point", "class (O(1), x, theta)").unwrap();
    for pt in &scene.picture.points {
        writeln!(s, "{:<6}{:<28}({})", pt.label, pt.class.to_string(), weights_text(&pt.weights)).unwrap();
    }
    let section = |name: &str, ws: &Option<Vec<Vec<Rat>>>, s: &mut String| match ws {
        Some(ws) => {
            let verts: Vec<String> = ws.iter().map(|w| format!("({})", weights_text(w))).collect();
            writeln!(s, "{name}: {}", verts.join(" ")).unwrap();
        }
        None => writeln!(s, "{name}: unavailable").unwrap(),
    };
    section("upper", &scene.upper, &mut s);
    section("lower", &scene.lower, &mut s);
    for line in legend(scene) {
        writeln!(s, "{line}").unwrap();
    }
    s
}

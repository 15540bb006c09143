//! SVG scatter plots of root clouds in the complex plane.

use std::fmt::Write as _;

use crate::eig::Root;

/// Plot window in data coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Bounds {
    /// Smallest square window around the points, padded by 5%.
    pub fn around(roots: &[Root]) -> Bounds {
        if roots.is_empty() {
            return Bounds { re_min: -2.0, re_max: 2.0, im_min: -2.0, im_max: 2.0 };
        }
        let (mut lo_re, mut hi_re, mut lo_im, mut hi_im) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for r in roots {
            lo_re = lo_re.min(r.re);
            hi_re = hi_re.max(r.re);
            lo_im = lo_im.min(r.im);
            hi_im = hi_im.max(r.im);
        }
        let span = (hi_re - lo_re).max(hi_im - lo_im).max(1e-9) * 1.1;
        let (c_re, c_im) = ((lo_re + hi_re) / 2.0, (lo_im + hi_im) / 2.0);
        Bounds {
            re_min: c_re - span / 2.0,
            re_max: c_re + span / 2.0,
            im_min: c_im - span / 2.0,
            im_max: c_im + span / 2.0,
        }
    }

    pub fn is_valid(&self) -> bool {
        [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|v| v.is_finite())
            && self.re_max > self.re_min
            && self.im_max > self.im_min
    }
}

/// Point radius in pixels: `max(0.5, 40/√count)`.
pub fn point_radius(count: usize) -> f64 {
    (40.0 / (count.max(1) as f64).sqrt()).max(0.5)
}

const PLOT_PX: f64 = 800.0;
const MARGIN: f64 = 40.0;

/// Renders one `<circle>` per root with equal scale on both axes.
pub fn render_svg(roots: &[Root], bounds: Option<Bounds>) -> String {
    let b = bounds.unwrap_or_else(|| Bounds::around(roots));
    let re_span = b.re_max - b.re_min;
    let im_span = b.im_max - b.im_min;
    let scale = PLOT_PX / re_span.max(im_span);
    let (w, h) = (re_span * scale, im_span * scale);
    let px = |re: f64| MARGIN + (re - b.re_min) * scale;
    let py = |im: f64| MARGIN + (b.im_max - im) * scale;

    let mut s = String::new();
    let (tw, th) = (w + 2.0 * MARGIN, h + 2.0 * MARGIN);
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{tw:.0}" height="{th:.0}" viewBox="0 0 {tw:.2} {th:.2}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{tw:.2}" height="{th:.2}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{w:.2}" height="{h:.2}" fill="none" stroke="black" stroke-width="1"/>"#
    )
    .unwrap();
    s.push_str(r##"<g stroke="#999" stroke-width="0.5">"##);
    s.push('\n');
    if b.re_min < 0.0 && b.re_max > 0.0 {
        writeln!(s, r#"<line x1="{0:.2}" y1="{MARGIN}" x2="{0:.2}" y2="{1:.2}"/>"#, px(0.0), MARGIN + h).unwrap();
    }
    if b.im_min < 0.0 && b.im_max > 0.0 {
        writeln!(s, r#"<line x1="{MARGIN}" y1="{0:.2}" x2="{1:.2}" y2="{0:.2}"/>"#, py(0.0), MARGIN + w).unwrap();
    }
    s.push_str("</g>\n");
    writeln!(s, r#"<g font-family="sans-serif" font-size="12" fill="black">"#).unwrap();
    let label = |v: f64| format!("{:.3}", v);
    writeln!(s, r#"<text x="{MARGIN}" y="{:.2}">{}</text>"#, MARGIN + h + 16.0, label(b.re_min)).unwrap();
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
        MARGIN + w,
        MARGIN + h + 16.0,
        label(b.re_max)
    )
    .unwrap();
    writeln!(s, r#"<text x="4" y="{:.2}">{}</text>"#, MARGIN + h, label(b.im_min)).unwrap();
    writeln!(s, r#"<text x="4" y="{:.2}">{}</text>"#, MARGIN - 4.0, label(b.im_max)).unwrap();
    s.push_str("</g>\n");

    let r = point_radius(roots.len());
    writeln!(s, r#"<g fill="steelblue" fill-opacity="0.8">"#).unwrap();
    for root in roots {
        writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="{r:.3}"/>"#, px(root.re), py(root.im)).unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    s
}

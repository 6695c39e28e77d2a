//! ASCII, SVG and TikZ pictures of a diagram's staircase slicing.
//!
//! All three formats share one layout: wire `i` sits at column `i`, slice `k`
//! occupies row `k`, and diagrams read top to bottom.

use std::fmt::Write;

use crate::diagram::{Diagram, Kind, Label, Slice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
    Tikz,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "svg" => Ok(Format::Svg),
            "tikz" => Ok(Format::Tikz),
            other => Err(format!("unknown render format `{other}` (expected ascii, svg or tikz)")),
        }
    }
}

pub fn render(d: &Diagram, format: Format) -> String {
    match format {
        Format::Ascii => ascii(d),
        Format::Svg => svg(&layout(d)),
        Format::Tikz => tikz(&layout(d)),
    }
}

fn glyph(s: &Slice) -> String {
    let mark = match s.gen.label() {
        Label::Plain => "",
        Label::Zero => "0",
        Label::Plus => "+",
    };
    match s.gen.kind() {
        Kind::Comul => format!("/{mark}\\"),
        Kind::Mul => format!("\\{mark}/"),
        Kind::Swap => "><".into(),
        Kind::Unit => "u".into(),
        Kind::Counit => "e".into(),
        Kind::Id => "|".into(),
    }
}

/// One text line per slice; untouched wires are drawn as `|`.
fn ascii(d: &Diagram) -> String {
    let slices = d.slices();
    if slices.is_empty() {
        return vec!["|"; d.inputs()].join(" ");
    }
    let mut lines = Vec::with_capacity(slices.len());
    for s in &slices {
        let mut tokens: Vec<String> = vec!["|".into(); s.left];
        tokens.push(glyph(s));
        tokens.extend(std::iter::repeat_n("|".to_string(), s.right));
        lines.push(tokens.join(" "));
    }
    lines.join("\n")
}

const STEP: f64 = 40.0;
const MARGIN: f64 = 20.0;
const STUB: f64 = 10.0;

#[derive(Debug, Clone, Copy)]
enum Class {
    Wire,
    In,
    Out,
}

#[derive(Debug)]
enum Shape {
    Line { from: (f64, f64), to: (f64, f64), class: Class },
    Dot { at: (f64, f64), hollow: bool },
    Text { at: (f64, f64), text: &'static str },
}

struct Layout {
    width: f64,
    height: f64,
    shapes: Vec<Shape>,
}

fn col(i: usize) -> f64 {
    MARGIN + i as f64 * STEP
}

fn layout(d: &Diagram) -> Layout {
    let slices = d.slices();
    let top = MARGIN + STUB;
    let rows = slices.len().max(1);
    let bottom = top + rows as f64 * STEP;
    let mut shapes = Vec::new();
    for i in 0..d.inputs() {
        shapes.push(Shape::Line { from: (col(i), MARGIN), to: (col(i), top), class: Class::In });
    }
    for j in 0..d.outputs() {
        shapes.push(Shape::Line { from: (col(j), bottom), to: (col(j), bottom + STUB), class: Class::Out });
    }
    if slices.is_empty() {
        for i in 0..d.inputs() {
            shapes.push(Shape::Line { from: (col(i), top), to: (col(i), bottom), class: Class::Wire });
        }
    }
    for (k, s) in slices.iter().enumerate() {
        let y0 = top + k as f64 * STEP;
        let y1 = y0 + STEP;
        let ym = (y0 + y1) / 2.0;
        let (a_in, a_out) = (s.gen.arity_in(), s.gen.arity_out());
        for i in 0..s.left {
            shapes.push(Shape::Line { from: (col(i), y0), to: (col(i), y1), class: Class::Wire });
        }
        for r in 0..s.right {
            let from = (col(s.left + a_in + r), y0);
            let to = (col(s.left + a_out + r), y1);
            shapes.push(Shape::Line { from, to, class: Class::Wire });
        }
        let ins: Vec<f64> = (0..a_in).map(|p| col(s.left + p)).collect();
        let outs: Vec<f64> = (0..a_out).map(|p| col(s.left + p)).collect();
        if s.gen.kind() == Kind::Swap {
            shapes.push(Shape::Line { from: (ins[0], y0), to: (outs[1], y1), class: Class::Wire });
            shapes.push(Shape::Line { from: (ins[1], y0), to: (outs[0], y1), class: Class::Wire });
            continue;
        }
        let ports: Vec<f64> = ins.iter().chain(&outs).copied().collect();
        let cx = ports.iter().sum::<f64>() / ports.len() as f64;
        for &x in &ins {
            shapes.push(Shape::Line { from: (x, y0), to: (cx, ym), class: Class::Wire });
        }
        for &x in &outs {
            shapes.push(Shape::Line { from: (cx, ym), to: (x, y1), class: Class::Wire });
        }
        let hollow = matches!(s.gen.kind(), Kind::Unit | Kind::Counit);
        shapes.push(Shape::Dot { at: (cx, ym), hollow });
        match s.gen.label() {
            Label::Plain => {}
            Label::Zero => shapes.push(Shape::Text { at: (cx + 6.0, ym - 4.0), text: "0" }),
            Label::Plus => shapes.push(Shape::Text { at: (cx + 6.0, ym - 4.0), text: "+" }),
        }
    }
    let wires = d.width().max(1);
    Layout { width: 2.0 * MARGIN + (wires - 1) as f64 * STEP, height: bottom + STUB + MARGIN, shapes }
}

fn svg(l: &Layout) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = l.width,
        h = l.height
    );
    for s in &l.shapes {
        let _ = match s {
            Shape::Line { from, to, class } => {
                let class = match class {
                    Class::Wire => "wire",
                    Class::In => "in",
                    Class::Out => "out",
                };
                writeln!(
                    out,
                    r#"  <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1.5"/>"#,
                    from.0, from.1, to.0, to.1
                )
            }
            Shape::Dot { at, hollow } => {
                let fill = if *hollow { "white" } else { "black" };
                writeln!(
                    out,
                    r#"  <circle cx="{}" cy="{}" r="4" fill="{fill}" stroke="black" stroke-width="1.5"/>"#,
                    at.0, at.1
                )
            }
            Shape::Text { at, text } => {
                writeln!(out, r#"  <text x="{}" y="{}" font-size="10">{text}</text>"#, at.0, at.1)
            }
        };
    }
    out.push_str("</svg>\n");
    out
}

fn tikz(l: &Layout) -> String {
    let mut out = String::from("\\begin{tikzpicture}[x=0.025cm,y=-0.025cm]\n");
    for s in &l.shapes {
        let _ = match s {
            Shape::Line { from, to, .. } => {
                writeln!(out, "  \\draw ({},{}) -- ({},{});", from.0, from.1, to.0, to.1)
            }
            Shape::Dot { at, hollow } => {
                let style = if *hollow { "draw, fill=white" } else { "fill" };
                writeln!(out, "  \\path[{style}] ({},{}) circle (4);", at.0, at.1)
            }
            Shape::Text { at, text } => writeln!(out, "  \\node[font=\\tiny] at ({},{}) {{${text}$}};", at.0, at.1),
        };
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn identity_is_a_bar() {
        assert_eq!(render(&Diagram::id(1), Format::Ascii), "|");
    }

    #[test]
    fn q_is_cup_over_cap() {
        let q = parse("comul ; mul").unwrap();
        assert_eq!(render(&q, Format::Ascii), "/\\\n\\/");
    }

    #[test]
    fn labeled_glyphs() {
        let d = parse("comul%+ ; id(1) * comul%0").unwrap();
        assert_eq!(render(&d, Format::Ascii), "/+\\\n| /0\\");
    }

    #[test]
    fn tikz_is_balanced() {
        let t = render(&parse("comul ; swap ; mul").unwrap(), Format::Tikz);
        assert!(t.starts_with("\\begin{tikzpicture}"));
        assert!(t.trim_end().ends_with("\\end{tikzpicture}"));
    }
}

//! Plain-SVG dendrogram rendering. Leaves sit on the abscissa in the order
//! the tree unfolds them; every merge is one bracket drawn at its height.
//! Merges that step back down below an earlier height are drawn dashed and
//! red so the eye lands on them.

use std::fmt::Write as _;

use crate::analysis::detect_backsteps;
use crate::linkage::Dendrogram;

fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

fn leaf_order(d: &Dendrogram, id: usize, out: &mut Vec<usize>) {
    let n = d.n_leaves;
    if id < n {
        out.push(id);
    } else {
        let merge = &d.merges[id - n - 1];
        leaf_order(d, merge.left, out);
        leaf_order(d, merge.right, out);
    }
}

pub fn render_dendrogram_svg(dendrogram: &Dendrogram) -> String {
    let n = dendrogram.n_leaves;
    let root = if n == 1 { 0 } else { n + (n - 1) };
    let mut order = Vec::with_capacity(n);
    leaf_order(dendrogram, root, &mut order);

    let show_labels = n <= 60;
    let dx = if n <= 60 { 18.0 } else { (1080.0 / n as f64).max(4.0) };
    let margin = 56.0;
    let top = 24.0;
    let baseline = 430.0;
    let label_space = if show_labels { 96.0 } else { 16.0 };
    let width = margin * 2.0 + dx * (n.saturating_sub(1)) as f64;
    let height = baseline + label_space;

    let h_max = dendrogram
        .heights()
        .into_iter()
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let y_of = |h: f64| baseline - (h / h_max) * (baseline - top);

    // x position of every leaf, then of every internal node bottom-up
    let mut x = vec![0.0f64; 2 * n];
    for (rank, &leaf) in order.iter().enumerate() {
        x[leaf] = margin + dx * rank as f64;
    }
    let mut node_h = vec![0.0f64; 2 * n];
    for merge in &dendrogram.merges {
        x[merge.new_id] = (x[merge.left] + x[merge.right]) / 2.0;
        node_h[merge.new_id] = merge.height;
    }

    let backsteps = detect_backsteps(dendrogram);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"sans-serif\" font-size=\"11\">"
    );
    let _ = writeln!(
        svg,
        "<rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>"
    );

    // axis with a handful of height ticks
    let _ = writeln!(
        svg,
        "<line x1=\"{0:.2}\" y1=\"{1:.2}\" x2=\"{0:.2}\" y2=\"{2:.2}\" stroke=\"#999\"/>",
        margin / 2.0,
        baseline,
        top
    );
    for k in 0..=4 {
        let h = h_max * k as f64 / 4.0;
        let y = y_of(h);
        let _ = writeln!(
            svg,
            "<line x1=\"{0:.2}\" y1=\"{y:.2}\" x2=\"{1:.2}\" y2=\"{y:.2}\" stroke=\"#999\"/>\n\
             <text x=\"{2:.2}\" y=\"{3:.2}\" text-anchor=\"end\" fill=\"#555\">{h:.3}</text>",
            margin / 2.0 - 4.0,
            margin / 2.0,
            margin / 2.0 - 7.0,
            y + 4.0
        );
    }

    for merge in &dendrogram.merges {
        let yl = y_of(node_h[merge.left]);
        let yr = y_of(node_h[merge.right]);
        let ym = y_of(merge.height);
        let class = if backsteps.contains(&merge.step) {
            "merge backstep"
        } else {
            "merge"
        };
        let style = if backsteps.contains(&merge.step) {
            " stroke=\"#c0392b\" stroke-dasharray=\"5 3\""
        } else {
            " stroke=\"#34495e\""
        };
        let _ = writeln!(
            svg,
            "<path class=\"{class}\" d=\"M {:.2} {:.2} V {:.2} H {:.2} V {:.2}\" fill=\"none\"{style} stroke-width=\"1.5\"/>",
            x[merge.left], yl, ym, x[merge.right], yr
        );
    }

    for &leaf in &order {
        let _ = writeln!(
            svg,
            "<circle cx=\"{:.2}\" cy=\"{baseline:.2}\" r=\"2\" fill=\"#34495e\"/>",
            x[leaf]
        );
        if show_labels {
            let _ = writeln!(
                svg,
                "<text x=\"{0:.2}\" y=\"{1:.2}\" transform=\"rotate(-60 {0:.2} {1:.2})\" \
                 text-anchor=\"end\" fill=\"#333\">{2}</text>",
                x[leaf],
                baseline + 14.0,
                escape_xml(&dendrogram.leaf_labels[leaf])
            );
        }
    }

    svg.push_str("</svg>\n");
    svg
}

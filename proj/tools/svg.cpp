#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace chiral::tools {
namespace {

struct Box {
  double x0, y0, x1, y1;
};

Box frame(const std::vector<HPoint2>& pts) {
  Box b{1e300, 1e300, -1e300, -1e300};
  for (const HPoint2& p : pts) {
    b.x0 = std::min(b.x0, p[0].to_double());
    b.x1 = std::max(b.x1, p[0].to_double());
    b.y0 = std::min(b.y0, p[1].to_double());
    b.y1 = std::max(b.y1, p[1].to_double());
  }
  double pad = 0.5 * std::max({b.x1 - b.x0, b.y1 - b.y0, 1.0});
  return {b.x0 - pad, b.y0 - pad, b.x1 + pad, b.y1 + pad};
}

class Panel {
 public:
  Panel(Box box, double left, double size) : box_(box), left_(left), size_(size) {
    scale_ = size / std::max(box.x1 - box.x0, box.y1 - box.y0);
  }
  double sx(double x) const { return left_ + (x - box_.x0) * scale_; }
  double sy(double y) const { return 20 + size_ - (y - box_.y0) * scale_; }
  bool inside(double x, double y) const { return x >= box_.x0 && x <= box_.x1 && y >= box_.y0 && y <= box_.y1; }
  const Box& box() const { return box_; }

 private:
  Box box_;
  double left_, size_, scale_ = 1;
};

// Polyline segments of the conic, traced by lines through a point known to lie on it.
void draw_conic(std::ostream& out, const Panel& panel, const Conic& c, const Vec3& on_conic, const char* colour) {
  const Mat3 s = c.matrix();
  double m[3][3];
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t k = 0; k < 3; ++k) m[r][k] = s(r, k).to_double();
  const double p[3] = {on_conic[0].to_double() / on_conic[2].to_double(), on_conic[1].to_double() / on_conic[2].to_double(), 1};
  std::string path;
  bool pen = false;
  const int steps = 720;
  for (int k = 0; k <= steps; ++k) {
    double th = std::numbers::pi * k / steps;
    double w[3] = {std::cos(th), std::sin(th), 0};
    double pw = 0, ww = 0;
    for (int r = 0; r < 3; ++r)
      for (int q = 0; q < 3; ++q) {
        pw += p[r] * m[r][q] * w[q];
        ww += w[r] * m[r][q] * w[q];
      }
    if (std::abs(ww) < 1e-12) {
      pen = false;
      continue;
    }
    double lambda = -2 * pw / ww;
    double x = p[0] + lambda * w[0], y = p[1] + lambda * w[1];
    if (!panel.inside(x, y)) {
      pen = false;
      continue;
    }
    std::ostringstream pt;
    pt << (pen ? " L" : " M") << panel.sx(x) << ' ' << panel.sy(y);
    path += pt.str();
    pen = true;
  }
  out << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\"/>\n";
}

void draw_panel(std::ostream& out, const PairSet& pairs, const std::vector<Conic>& conics,
                const std::vector<BoundaryEntry>& boundary, const Panel& panel, const char* point_name, int cells) {
  const Box& b = panel.box();
  const double cw = (b.x1 - b.x0) / cells, ch = (b.y1 - b.y0) / cells;
  for (int ix = 0; ix < cells; ++ix)
    for (int iy = 0; iy < cells; ++iy) {
      Scalar x(std::lround((b.x0 + (ix + 0.5) * cw) * 1024), 1024);
      Scalar y(std::lround((b.y0 + (iy + 0.5) * ch) * 1024), 1024);
      if (!chiral_at_epipole(pairs, Vec3{x, y, 1})) continue;
      out << "<rect x=\"" << panel.sx(b.x0 + ix * cw) << "\" y=\"" << panel.sy(b.y0 + (iy + 1) * ch) << "\" width=\""
          << panel.sx(b.x0 + cw) - panel.sx(b.x0) << "\" height=\"" << panel.sy(b.y0) - panel.sy(b.y0 + ch)
          << "\" fill=\"#9ecae1\" fill-opacity=\"0.6\"/>\n";
    }
  static const char* palette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00"};
  for (std::size_t l = 0; l < conics.size(); ++l) {
    const Vec3& anchor = pairs.u(l == 0 ? 1 : 0).h;
    draw_conic(out, panel, conics[l], anchor, palette[l % 5]);
    out << "<text x=\"" << panel.sx(b.x0) + 4 << "\" y=\"" << 36 + 14 * l << "\" fill=\"" << palette[l % 5]
        << "\" font-size=\"12\">" << conics[l].label << "</text>\n";
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bool vertex = std::any_of(boundary.begin(), boundary.end(), [&](const BoundaryEntry& e) { return e.point == i; });
    double x = panel.sx(pairs.u(i)[0].to_double()), y = panel.sy(pairs.u(i)[1].to_double());
    out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << (vertex ? 5 : 3.5) << "\" fill=\""
        << (vertex ? "#000" : "#fff") << "\" stroke=\"#000\"/>\n";
    out << "<text x=\"" << x + 6 << "\" y=\"" << y - 6 << "\" font-size=\"12\">" << point_name << i + 1 << "</text>\n";
  }
}

}  // namespace

std::string region_svg(const PairSet& pairs, const RegionReport& report, int shading_cells) {
  const double size = 420;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * size + 60 << "\" height=\"" << size + 40 << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  Panel first(frame(pairs.u_points()), 20, size);
  Panel second(frame(pairs.v_points()), 40 + size, size);
  draw_panel(out, pairs, report.first_image, report.first_boundary, first, "u", shading_cells);
  draw_panel(out, pairs.swapped(), report.second_image, report.second_boundary, second, "v", shading_cells);
  out << "</svg>\n";
  return out.str();
}

}  // namespace chiral::tools

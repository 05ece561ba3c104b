#include "irbox/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace irbox::svg {

Viewport::Viewport(double world_x0, double world_y0, double world_x1, double world_y1,
                   double width, double height, double margin)
    : x0_(world_x0), y0_(world_y0), width_(width), height_(height), margin_(margin) {
  if (!(world_x1 > world_x0) || !(world_y1 > world_y0)) {
    throw std::invalid_argument("viewport world rectangle is empty");
  }
  if (!(width > 2 * margin) || !(height > 2 * margin)) {
    throw std::invalid_argument("viewport smaller than its margins");
  }
  sx_ = (width - 2 * margin) / (world_x1 - world_x0);
  sy_ = (height - 2 * margin) / (world_y1 - world_y0);
}

Point Viewport::map(double x, double y) const {
  Point p{margin_ + (x - x0_) * sx_, height_ - margin_ - (y - y0_) * sy_};
  // Clamp rounding spill at the box edges back into the viewBox.
  p.x = std::clamp(p.x, 0.0, width_);
  p.y = std::clamp(p.y, 0.0, height_);
  return p;
}

std::string fmt(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::begin_group(std::string_view id, std::string_view style) {
  body_ += "<g id=\"" + escape_xml(id) + "\"";
  if (!style.empty()) body_ += " " + std::string(style);
  body_ += ">\n";
  ++open_groups_;
}

void Document::end_group() {
  if (open_groups_ == 0) throw std::logic_error("end_group without begin_group");
  body_ += "</g>\n";
  --open_groups_;
}

void Document::line(Point a, Point b, std::string_view stroke, double stroke_width,
                    std::string_view dash) {
  body_ += "<line x1=\"" + fmt(a.x) + "\" y1=\"" + fmt(a.y) + "\" x2=\"" + fmt(b.x) +
           "\" y2=\"" + fmt(b.y) + "\" stroke=\"" + escape_xml(stroke) + "\" stroke-width=\"" +
           fmt(stroke_width) + "\"";
  if (!dash.empty()) body_ += " stroke-dasharray=\"" + escape_xml(dash) + "\"";
  body_ += "/>\n";
}

void Document::polygon(std::span<const Point> points, std::string_view fill,
                       std::string_view stroke) {
  body_ += "<polygon points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) body_ += ' ';
    body_ += fmt(points[i].x) + "," + fmt(points[i].y);
  }
  body_ += "\" fill=\"" + escape_xml(fill) + "\" stroke=\"" + escape_xml(stroke) + "\"/>\n";
}

void Document::circle(Point center, double radius, std::string_view fill,
                      std::string_view title) {
  body_ += "<circle cx=\"" + fmt(center.x) + "\" cy=\"" + fmt(center.y) + "\" r=\"" +
           fmt(radius) + "\" fill=\"" + escape_xml(fill) + "\"";
  if (title.empty()) {
    body_ += "/>\n";
  } else {
    body_ += "><title>" + escape_xml(title) + "</title></circle>\n";
  }
}

void Document::rect(Point corner, double w, double h, std::string_view fill,
                    std::string_view stroke) {
  body_ += "<rect x=\"" + fmt(corner.x) + "\" y=\"" + fmt(corner.y) + "\" width=\"" + fmt(w) +
           "\" height=\"" + fmt(h) + "\" fill=\"" + escape_xml(fill) + "\" stroke=\"" +
           escape_xml(stroke) + "\"/>\n";
}

void Document::text(Point at, std::string_view content, double size) {
  body_ += "<text x=\"" + fmt(at.x) + "\" y=\"" + fmt(at.y) + "\" font-size=\"" + fmt(size) +
           "\" font-family=\"sans-serif\">" + escape_xml(content) + "</text>\n";
}

std::string Document::str() const {
  if (open_groups_ != 0) throw std::logic_error("unclosed SVG group");
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(width_) +
         "\" height=\"" + fmt(height_) + "\" viewBox=\"0 0 " + fmt(width_) + " " +
         fmt(height_) + "\">\n";
  out += body_;
  out += "</svg>\n";
  return out;
}

}  // namespace irbox::svg

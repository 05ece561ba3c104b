#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace irbox::svg {

struct Point {
  double x = 0;
  double y = 0;
};

/// Maps a world rectangle onto a pixel viewport with the vertical axis
/// flipped, so larger world y draws higher on screen.
class Viewport {
 public:
  Viewport(double world_x0, double world_y0, double world_x1, double world_y1, double width,
           double height, double margin);

  [[nodiscard]] Point map(double x, double y) const;
  [[nodiscard]] double width() const { return width_; }
  [[nodiscard]] double height() const { return height_; }

 private:
  double x0_, y0_, sx_, sy_, width_, height_, margin_;
};

/// Minimal SVG 1.1 writer. Elements are emitted in insertion order with fixed
/// three-decimal coordinates, so output bytes depend only on the inputs.
class Document {
 public:
  Document(double width, double height);

  void begin_group(std::string_view id, std::string_view style = {});
  void end_group();
  void line(Point a, Point b, std::string_view stroke, double stroke_width,
            std::string_view dash = {});
  void polygon(std::span<const Point> points, std::string_view fill,
               std::string_view stroke = "none");
  void circle(Point center, double radius, std::string_view fill, std::string_view title = {});
  void rect(Point corner, double w, double h, std::string_view fill, std::string_view stroke);
  void text(Point at, std::string_view content, double size = 12.0);

  [[nodiscard]] std::string str() const;

 private:
  double width_;
  double height_;
  int open_groups_ = 0;
  std::string body_;
};

std::string escape_xml(std::string_view text);
std::string fmt(double value);

}  // namespace irbox::svg

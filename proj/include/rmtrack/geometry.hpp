/*
 * Copyright (C) 2026 The rmtrack authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#pragma once

#include <vector>

namespace rmtrack {

struct Point
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);
double squared_distance(Point a, Point b);

/// True when two discs of the given radius centered at a and b overlap,
/// i.e. |a - b| < 2r. Touching discs (distance exactly 2r) do not overlap.
bool discs_overlap(Point a, Point b, double radius);

struct Rect
{
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  bool degenerate() const { return !(xmax > xmin) || !(ymax > ymin); }
  bool contains(Point p) const;
};

struct Polygon
{
  std::vector<Point> vertices;
};

Polygon make_box(double xmin, double ymin, double xmax, double ymax);

double point_segment_distance(Point p, Point a, Point b);

bool segments_intersect(Point p1, Point p2, Point q1, Point q2);

/// Even-odd rule; points on the boundary may land on either side.
bool point_in_polygon(Point p, const Polygon& poly);

/// Zero when p is inside the polygon, otherwise the distance to its boundary.
double distance_to_polygon(Point p, const Polygon& poly);

/// At least three vertices and no two non-adjacent edges touch.
bool is_simple(const Polygon& poly);

} // namespace rmtrack

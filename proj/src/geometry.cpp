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

#include <rmtrack/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rmtrack {

double squared_distance(Point a, Point b)
{
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx*dx + dy*dy;
}

double distance(Point a, Point b)
{
  return std::sqrt(squared_distance(a, b));
}

bool discs_overlap(Point a, Point b, double radius)
{
  const double reach = 2.0*radius;
  return squared_distance(a, b) < reach*reach;
}

bool Rect::contains(Point p) const
{
  return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
}

Polygon make_box(double xmin, double ymin, double xmax, double ymax)
{
  return Polygon{{{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}}};
}

double point_segment_distance(Point p, Point a, Point b)
{
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx*dx + dy*dy;
  if (len2 == 0.0)
    return distance(p, a);

  double s = ((p.x - a.x)*dx + (p.y - a.y)*dy) / len2;
  s = std::clamp(s, 0.0, 1.0);
  return distance(p, Point{a.x + s*dx, a.y + s*dy});
}

namespace {

double cross(Point o, Point a, Point b)
{
  return (a.x - o.x)*(b.y - o.y) - (a.y - o.y)*(b.x - o.x);
}

int orientation(Point o, Point a, Point b)
{
  const double c = cross(o, a, b);
  if (c > 0.0)
    return 1;
  if (c < 0.0)
    return -1;
  return 0;
}

bool on_segment(Point p, Point a, Point b)
{
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x)
      && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

} // anonymous namespace

bool segments_intersect(Point p1, Point p2, Point q1, Point q2)
{
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);

  if (o1 != o2 && o3 != o4)
    return true;

  if (o1 == 0 && on_segment(q1, p1, p2)) return true;
  if (o2 == 0 && on_segment(q2, p1, p2)) return true;
  if (o3 == 0 && on_segment(p1, q1, q2)) return true;
  if (o4 == 0 && on_segment(p2, q1, q2)) return true;
  return false;
}

bool point_in_polygon(Point p, const Polygon& poly)
{
  const auto& v = poly.vertices;
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
  {
    if ((v[i].y > p.y) != (v[j].y > p.y))
    {
      const double x_cross =
          v[j].x + (p.y - v[j].y)*(v[i].x - v[j].x)/(v[i].y - v[j].y);
      if (p.x < x_cross)
        inside = !inside;
    }
  }
  return inside;
}

double distance_to_polygon(Point p, const Polygon& poly)
{
  const auto& v = poly.vertices;
  if (v.empty())
    return std::numeric_limits<double>::infinity();

  if (v.size() >= 3 && point_in_polygon(p, poly))
    return 0.0;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    best = std::min(best, point_segment_distance(p, v[i], v[(i+1) % v.size()]));
  return best;
}

bool is_simple(const Polygon& poly)
{
  const auto& v = poly.vertices;
  const std::size_t m = v.size();
  if (m < 3)
    return false;

  for (std::size_t i = 0; i < m; ++i)
  {
    if (v[i] == v[(i+1) % m])
      return false;

    for (std::size_t j = i + 1; j < m; ++j)
    {
      const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
      if (adjacent)
        continue;
      if (segments_intersect(v[i], v[(i+1) % m], v[j], v[(j+1) % m]))
        return false;
    }
  }
  return true;
}

} // namespace rmtrack

#pragma once

#include <vector>

#include "isospec/holonomy.hpp"

namespace isospec {

/// Points of the Klein model are stored as complex numbers.
Complex klein_from_poincare(Complex p);
Complex poincare_from_klein(Complex k);
/// Hyperbolic distance from the origin, and between two Klein points.
double klein_radius(Complex k);
double klein_distance(Complex a, Complex b);

/// Points k of the Klein disk with dot(k, normal) <= offset.
struct HalfPlane {
    Complex normal;
    double offset = 0.0;
    double eval(Complex k) const { return k.real() * normal.real() + k.imag() * normal.imag() - offset; }
};

/// Half-plane of points at least as close to the origin as to g(0).
HalfPlane bisector(const DiskIsometry& g);

struct CuspVertex {
    int vertex = -1;           // index into DirichletDomain::vertices
    DiskIsometry parabolic;    // vertex cycle transformation, fixes the vertex
    double translation = 0.0;  // |t| with the vertex moved to infinity
    double height = 0.0;       // truncation height actually used
};

/// Dirichlet polygon of the surface group centered at a basepoint, in the
/// Klein model with the basepoint at the origin.
///
/// Side i runs from vertices[i] to vertices[i + 1] (counterclockwise) and
/// lies on the bisector of 0 and side_element[i](0). side_element[i]^-1
/// carries it onto side side_pair[i].
struct DirichletDomain {
    Complex basepoint;  // upper half-plane
    Isometry recenter;  // sends i to the basepoint
    std::vector<DiskIsometry> generators;

    std::vector<Complex> vertices;
    std::vector<bool> ideal;
    std::vector<DiskIsometry> side_element;
    std::vector<HalfPlane> side_plane;
    std::vector<int> side_pair;
    std::vector<double> vertex_angle;  // unwrapped arguments, increasing

    std::vector<CuspVertex> cusps;
    /// The polygon with a neighborhood of each ideal vertex cut off by a
    /// geodesic chord. Every closed geodesic has a lift meeting it.
    std::vector<Complex> truncated;
    std::vector<HalfPlane> truncated_plane;

    double area = 0.0;
    double expected_area = 0.0;
    double rho = 0.0;  // max distance from the origin to a truncated vertex
    double orbit_radius = 0.0;
    int orbit_size = 0;

    int side_count() const { return static_cast<int>(vertices.size()); }
    /// Side crossed by the ray from the origin in direction `dir`.
    int exit_side(Complex dir) const;
};

struct DirichletOptions {
    int max_orbit = 4'000'000;
    double max_radius = 40.0;
};

/// Throws ResourceLimit when the orbit ball needed to certify the polygon
/// exceeds the options, NumericalInstability when the polygon is inconsistent.
DirichletDomain dirichlet_domain(const HolonomyRep& rep, Complex basepoint, const DirichletOptions& opt = {});

/// The holonomy's basepoint candidates, each nudged off the pants symmetry
/// axes, ordered by how far the generators move them.
std::vector<Complex> dirichlet_basepoints(const HolonomyRep& rep);

/// Polygons for every usable basepoint candidate (each nudged off the pants
/// symmetry axes), sorted by rho.
std::vector<DirichletDomain> dirichlet_domains(const HolonomyRep& rep, const DirichletOptions& opt = {});
DirichletDomain best_dirichlet_domain(const HolonomyRep& rep, const DirichletOptions& opt = {});

/// Parameter interval [t0, t1] within [0, 1] of the segment a + t (b - a)
/// inside all half-planes, with the index of the plane that ends it.
struct Clip {
    bool hit = false;
    double t0 = 0.0, t1 = 1.0;
    int exit_plane = -1;
    double exit_margin = 1.0;  // gap to the runner-up exit parameter
};
Clip clip_segment(Complex a, Complex b, const std::vector<HalfPlane>& planes);

}  // namespace isospec

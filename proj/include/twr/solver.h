#pragma once

#include "twr/tours.h"

#include <cstdint>
#include <string>

namespace twr {

struct NotAWatchmanRoute : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CoverageVerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownKind : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CoverageReport {
    std::size_t samples = 0;
    std::size_t misses = 0;
    std::vector<Point> missed;
};

/// Samples n boundary and n interior points and checks that some tour sees each.
CoverageReport verify_coverage(const SimplePolygon& P, const std::vector<Tour>& tours, std::size_t n_samples,
                               std::uint64_t seed);
/// Does some point of the closed tour see x.
bool tour_sees(const SimplePolygon& P, const Tour& t, const Point& x);
/// Every extension is covered by the union of the tours.
bool guard_condition(const SimplePolygon& P, const std::vector<Tour>& tours);

struct GuardabilityReport {
    bool star_shaped = false;
    std::optional<Point> kernel_witness;
    std::optional<std::pair<Point, Point>> two_point_guards;
    std::string method;
};

GuardabilityReport guardability(const SimplePolygon& P, std::uint64_t seed = 1);

struct SolveOptions {
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    bool verify = true;
};

struct TwoWatchmanSolution {
    Tour tour1;
    Tour tour2;
    double maxlen = 0.0;
    double sumlen = 0.0;
    double lower_bound = 0.0;
    double guarantee_factor = 0.0;
    std::string factor_kind;
    std::string mode;
    std::optional<std::pair<Point, Point>> bases;
    std::optional<std::pair<std::size_t, std::size_t>> extension_pair;
    std::vector<std::string> provenance;
    CoverageReport coverage;
    /// jellyfish data of the winning pair, for drawing
    std::vector<Tentacle> tentacles;
};

TwoWatchmanSolution solve_floating(const SimplePolygon& P, BaseMode variant, const SolveOptions& opt = {});
TwoWatchmanSolution solve_fixed(const SimplePolygon& P, const Point& q1, const Point& q2,
                                const SolveOptions& opt = {});

/// Splits a watchman route at its start p and the half-length point q.
std::pair<Tour, Tour> halve_tour(const SimplePolygon& P, const Tour& W);
/// Same split with p taken at waypoint `start`.
std::pair<Tour, Tour> halve_tour_at(const SimplePolygon& P, const Tour& W, std::size_t start);
/// Heuristic watchman route; covers every extension.
Tour initial_watchman_route(const SimplePolygon& P);

double guarantee_factor(const std::string& kind);

}  // namespace twr

#pragma once

#include "twr/tentacles.h"

namespace twr {

struct Jellyfish {
    Point head;
    std::vector<Tentacle> tentacles;
    double length() const;
};

struct SplitRecord {
    std::size_t edge = 0;
    Point r;
    double t = 0.0;
    double len1 = 0.0;
    double len2 = 0.0;
};

struct JellyfishPair {
    Jellyfish jf1;
    Jellyfish jf2;
    double length = 0.0;
    std::vector<SplitRecord> splits;
};

/// Assigns every edge endpoint to the head with the shorter edge-restricted tentacle, ties to q1,
/// and adds split tentacles at the equal-length point of each divided edge.
JellyfishPair jellyfish_pair(const SimplePolygon& P, const Point& q1, const Point& q2);

enum class BaseMode { Fast, Full };

struct MinimumJellyfishPair {
    JellyfishPair pair;
    Point q1, q2;
    std::size_t e1 = 0, e2 = 0;    /// indices into extensions(P)
    int case_tag = 1;
    BaseMode mode = BaseMode::Fast;
    double length() const { return pair.length; }
};

MinimumJellyfishPair bases(const SimplePolygon& P, std::size_t e1, std::size_t e2, BaseMode mode);

/// Candidate base points of one extension pair before the jellyfish evaluation.
struct BaseCandidate {
    Point q1, q2;
    int case_tag = 1;
};
std::vector<BaseCandidate> base_candidates(const SimplePolygon& P, std::size_t e1, std::size_t e2,
                                           BaseMode mode);
/// Case-1 value: max over edge endpoints of the smaller of the two shortest extension-to-region distances.
/// No jellyfish pair on e1 x e2 is shorter.
double case1_bound(const SimplePolygon& P, std::size_t e1, std::size_t e2);

struct Removal {
    Tentacle removed;
    Tentacle covering;
    int jellyfish = 1;
};

struct ReducedJellyfishPair {
    Jellyfish jf1;
    Jellyfish jf2;
    /// all retained tentacles of both heads, decreasing length
    std::vector<Tentacle> retained;
    std::vector<Removal> log;
    double length = 0.0;
};

ReducedJellyfishPair reduce(const SimplePolygon& P, const JellyfishPair& pair);

}  // namespace twr

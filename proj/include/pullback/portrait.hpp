#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pullback {

struct PreconditionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dynamical portrait of a marked map on four points a_1..a_4. Index 0 is
// unused so that point indices match the 1-based naming convention.
struct Portrait {
    std::array<std::string, 5> labels{"", "a", "b", "c", "d"};
    std::array<int, 5> images{};   // 0 = no image
    int essential = 0;             // 0 = none
    std::array<bool, 5> singular{};
    std::array<int, 5> degrees{};  // 0 = unknown
    bool transcendental = false;
    bool unmarked_singular_values_exist = false;

    int label_to_index(const std::string& s) const;
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool valid() const { return problems.empty(); }
};

// A 3-subset B containing the singular values, with its preimage set
// C = closure(f^{-1}(B)) cap A, the complement indices i (of B) and j (of C),
// so that f(a_j) = a_i with local degree 1.
struct BSet {
    std::array<int, 3> members; // ascending
    std::array<int, 3> cset;    // ascending
    int i = 0;
    int j = 0;
};

// Partition of the four marked points into two unordered pairs: the isotopy
// class of an essential simple closed curve on the 4-marked sphere.
struct LevyClass {
    std::array<std::array<int, 2>, 2> pairs; // each pair ascending, pairs
                                             // ordered by first element
    bool operator==(const LevyClass&) const = default;
};

struct UnobstructedResult {
    bool totally_unobstructed = false;
    std::optional<std::array<int, 2>> witness; // pair violating the criterion
};

// Enumeration constraints for a family of portraits. Two modes:
//  - fixed singular labels: `singular` lists the marked singular values and
//    enumeration keeps them pinned, quotienting only by `interchangeable`;
//  - auto assignment: portraits are enumerated as abstract dynamics on the
//    non-essential points up to any relabeling, and `finite_singular_slots`
//    singular values are then placed canonically (points with no outside
//    preimage first, then along the orbit order).
struct FamilySpec {
    bool transcendental = false;
    std::vector<int> singular;  // indices of marked singular values
    int essential = 0;          // 0 = none
    std::vector<int> omitted;   // points with empty preimage in A
    std::vector<int> interchangeable; // labels quotiented by permutation
    bool auto_singular = false;
    int finite_singular_slots = 0;
};

ValidationReport validate(const Portrait& p);
std::vector<BSet> find_b_sets(const Portrait& p);
UnobstructedResult totally_unobstructed(const Portrait& p);

struct EnumeratedPortrait {
    Portrait portrait;
    bool condition_ii = false;
};
std::vector<EnumeratedPortrait> enumerate_portraits(const FamilySpec& spec);

// Named presets: "entire3" (three singular values, essential omitted) and
// "exponential" (two singular values, one essential, the other omitted).
FamilySpec family_preset(const std::string& name);

// cusp is the value 0, 1 or infinity in the C-normalized coordinate
// (a_{j1}, a_{j2}, a_{j3}) -> (0, 1, inf); encode infinity as 2.
LevyClass cusp_to_levy_class(const BSet& b, int cusp_slot);

std::string portrait_to_json(const Portrait& p);
Portrait portrait_from_json(const std::string& text);

} // namespace pullback

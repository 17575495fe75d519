#include "pullback/portrait.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace pullback {

int Portrait::label_to_index(const std::string& s) const {
    for (int t = 1; t <= 4; ++t)
        if (labels[t] == s) return t;
    return 0;
}

ValidationReport validate(const Portrait& p) {
    ValidationReport rep;
    auto flag = [&rep](const std::string& s) { rep.problems.push_back(s); };

    for (int t = 1; t <= 4; ++t)
        for (int u = t + 1; u <= 4; ++u)
            if (p.labels[t] == p.labels[u])
                flag("duplicate label: " + p.labels[t]);

    if (p.essential != 0 && !p.transcendental)
        flag("essential singularity marked on a non-transcendental portrait");

    for (int t = 1; t <= 4; ++t) {
        if (t == p.essential) {
            if (p.images[t] != 0)
                flag("essential singularity " + p.labels[t] + " has an image");
            continue;
        }
        if (p.images[t] == 0)
            flag("missing image: " + p.labels[t] +
                 " is not the essential singularity and has no image in A");
        else if (p.images[t] < 1 || p.images[t] > 4)
            flag("image of " + p.labels[t] + " is out of range");
    }

    for (int t = 1; t <= 4; ++t) {
        if (p.degrees[t] >= 2) {
            // a branch point of degree >= 2 produces a singular value at its
            // image
            int im = p.images[t];
            if (im >= 1 && im <= 4 && !p.singular[im])
                flag("degree/singular inconsistency: deg(" + p.labels[t] +
                     ") >= 2 but its image " + p.labels[im] +
                     " is not marked singular");
        }
    }
    return rep;
}

std::vector<BSet> find_b_sets(const Portrait& p) {
    std::vector<BSet> out;
    if (p.unmarked_singular_values_exist) return out;
    for (int skip = 4; skip >= 1; --skip) {
        // B = {1,2,3,4} - {skip}
        bool contains_singular = true;
        if (p.singular[skip]) contains_singular = false;
        if (!contains_singular) continue;

        bool in_b[5] = {false, false, false, false, false};
        for (int t = 1; t <= 4; ++t)
            if (t != skip) in_b[t] = true;

        std::vector<int> cset;
        for (int t = 1; t <= 4; ++t) {
            if (t == p.essential || (p.images[t] != 0 && in_b[p.images[t]]))
                cset.push_back(t);
        }
        if (cset.size() != 3) continue;

        int j = 10 - cset[0] - cset[1] - cset[2];
        if (p.images[j] != skip) continue;  // f(a_j) must be a_i
        if (p.degrees[j] >= 2) continue;    // deg(f, a_j) = 1 required

        BSet b;
        int n = 0;
        for (int t = 1; t <= 4; ++t)
            if (in_b[t]) b.members[n++] = t;
        std::copy(cset.begin(), cset.end(), b.cset.begin());
        b.i = skip;
        b.j = j;
        out.push_back(b);
    }
    std::sort(out.begin(), out.end(),
              [](const BSet& x, const BSet& y) { return x.i < y.i; });
    return out;
}

UnobstructedResult totally_unobstructed(const Portrait& p) {
    if (!validate(p).valid())
        throw PreconditionFailed("totally_unobstructed: invalid portrait");
    if (find_b_sets(p).empty())
        throw PreconditionFailed(
            "totally_unobstructed: portrait admits no valid B-set");

    auto deg1 = [&p](int t) { return p.degrees[t] == 0 || p.degrees[t] == 1; };
    for (int x = 1; x <= 4; ++x) {
        for (int y = x + 1; y <= 4; ++y) {
            if (x == p.essential || y == p.essential) continue;
            if (!deg1(x) || !deg1(y)) continue;
            std::set<int> image{p.images[x], p.images[y]};
            std::set<int> self{x, y};
            std::set<int> complement;
            for (int t = 1; t <= 4; ++t)
                if (!self.count(t)) complement.insert(t);
            if (image == self || image == complement)
                return {false, std::array<int, 2>{x, y}};
        }
    }
    return {true, std::nullopt};
}

namespace {

// canonical image tuple under the permutation group generated by swapping
// interchangeable labels
std::array<int, 5> canonical_images(const std::array<int, 5>& images,
                                    const std::vector<int>& interchangeable) {
    std::vector<int> perm_slots = interchangeable;
    std::sort(perm_slots.begin(), perm_slots.end());
    std::array<int, 5> best = images;
    std::vector<int> target = perm_slots;
    do {
        int sigma[5] = {0, 1, 2, 3, 4};
        for (size_t t = 0; t < perm_slots.size(); ++t)
            sigma[perm_slots[t]] = target[t];
        std::array<int, 5> relabeled{};
        for (int x = 1; x <= 4; ++x) {
            if (images[x] == 0)
                relabeled[sigma[x]] = 0;
            else
                relabeled[sigma[x]] = sigma[images[x]];
        }
        if (relabeled < best) best = relabeled;
    } while (std::next_permutation(target.begin(), target.end()));
    return best;
}

} // namespace

namespace {

std::set<int> reach_from(const std::set<int>& start,
                         const std::array<int, 5>& images, int essential) {
    std::set<int> reached = start;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int x : std::set<int>(reached)) {
            int im = (x == essential) ? 0 : images[x];
            if (im != 0 && !reached.count(im)) {
                reached.insert(im);
                grew = true;
            }
        }
    }
    return reached;
}

// Canonical singular assignment for auto-singular families: points that no
// other point ever reaches must be singular; remaining slots follow the
// orbit order (so a chain gets its first two points, not its endpoints).
struct SingularAssignment {
    std::set<int> chosen;
    bool covers_all = false;
};

SingularAssignment assign_singular(const std::vector<int>& movers,
                                   const std::array<int, 5>& images,
                                   int slots) {
    SingularAssignment res;
    std::set<int> all(movers.begin(), movers.end());
    for (int x : movers) {
        bool reachable_from_others = false;
        for (int y : movers) {
            if (y == x) continue;
            if (reach_from({y}, images, 0).count(x)) {
                reachable_from_others = true;
                break;
            }
        }
        if (!reachable_from_others) res.chosen.insert(x);
    }
    if ((int)res.chosen.size() > slots) return res; // no valid assignment

    while ((int)res.chosen.size() < slots) {
        std::set<int> r = reach_from(res.chosen, images, 0);
        if (r != all) {
            for (int x : movers)
                if (!r.count(x)) { res.chosen.insert(x); break; }
            continue;
        }
        // orbit-order walk from the chosen points
        std::vector<int> order;
        for (int s : res.chosen) {
            int x = s;
            while (x != 0 && !std::count(order.begin(), order.end(), x)) {
                order.push_back(x);
                x = images[x];
            }
        }
        bool added = false;
        for (int x : order) {
            if (!res.chosen.count(x)) {
                res.chosen.insert(x);
                added = true;
                break;
            }
        }
        if (!added) break;
    }
    res.covers_all = (reach_from(res.chosen, images, 0) == all);
    return res;
}

} // namespace

std::vector<EnumeratedPortrait> enumerate_portraits(const FamilySpec& spec) {
    std::vector<EnumeratedPortrait> out;

    std::vector<int> movers;  // points that need an image
    for (int t = 1; t <= 4; ++t)
        if (t != spec.essential) movers.push_back(t);

    std::vector<int> targets;
    for (int t = 1; t <= 4; ++t) {
        if (t == spec.essential) continue;
        if (std::count(spec.omitted.begin(), spec.omitted.end(), t)) continue;
        targets.push_back(t);
    }
    if (targets.empty()) return out;

    std::set<std::array<int, 5>> seen;
    size_t total = 1;
    for (size_t t = 0; t < movers.size(); ++t) total *= targets.size();

    for (size_t code = 0; code < total; ++code) {
        std::array<int, 5> images{};
        size_t rem = code;
        for (int m : movers) {
            images[m] = targets[rem % targets.size()];
            rem /= targets.size();
        }

        Portrait p;
        p.essential = spec.essential;
        p.transcendental = spec.transcendental;

        bool condition_ii = false;
        if (spec.auto_singular) {
            auto canon = canonical_images(images, spec.interchangeable);
            if (!seen.insert(canon).second) continue;
            p.images = canon;
            auto assigned = assign_singular(movers, canon,
                                            spec.finite_singular_slots);
            if (assigned.covers_all) {
                for (int s : assigned.chosen) p.singular[s] = true;
                if (spec.essential != 0) p.singular[spec.essential] = true;
                condition_ii = !find_b_sets(p).empty();
            }
        } else {
            // the marked set must be covered by the singular orbits
            std::set<int> start(spec.singular.begin(), spec.singular.end());
            if (reach_from(start, images, spec.essential).size() != 4)
                continue;
            auto canon = canonical_images(images, spec.interchangeable);
            if (!seen.insert(canon).second) continue;
            p.images = canon;
            for (int s : spec.singular) p.singular[s] = true;
            condition_ii = !find_b_sets(p).empty();
        }
        if (!validate(p).valid()) continue;

        EnumeratedPortrait ep;
        ep.portrait = p;
        ep.condition_ii = condition_ii;
        out.push_back(ep);
    }
    std::sort(out.begin(), out.end(),
              [](const EnumeratedPortrait& x, const EnumeratedPortrait& y) {
                  return x.portrait.images < y.portrait.images;
              });
    return out;
}

FamilySpec family_preset(const std::string& name) {
    FamilySpec spec;
    spec.transcendental = true;
    if (name == "entire3") {
        spec.essential = 4;
        spec.omitted = {4};
        spec.interchangeable = {1, 2, 3};
        spec.auto_singular = true;
        spec.finite_singular_slots = 2;
        return spec;
    }
    if (name == "exponential") {
        spec.singular = {1, 4};
        spec.essential = 4;
        spec.omitted = {1, 4};
        spec.interchangeable = {2, 3};
        return spec;
    }
    throw std::invalid_argument("unknown family preset: " + name);
}

LevyClass cusp_to_levy_class(const BSet& b, int cusp_slot) {
    if (cusp_slot < 0 || cusp_slot > 2)
        throw std::invalid_argument("cusp slot must be 0, 1 or 2 (for inf)");
    int partner = b.cset[cusp_slot];
    std::array<int, 2> first{b.j, partner};
    std::sort(first.begin(), first.end());
    std::array<int, 2> second{};
    int n = 0;
    for (int t = 1; t <= 4; ++t)
        if (t != first[0] && t != first[1]) second[n++] = t;
    LevyClass lc;
    lc.pairs = {first, second};
    if (lc.pairs[1][0] < lc.pairs[0][0]) std::swap(lc.pairs[0], lc.pairs[1]);
    return lc;
}

std::string portrait_to_json(const Portrait& p) {
    nlohmann::json j;
    j["points"] = {p.labels[1], p.labels[2], p.labels[3], p.labels[4]};
    nlohmann::json images = nlohmann::json::object();
    for (int t = 1; t <= 4; ++t)
        if (p.images[t] != 0) images[p.labels[t]] = p.labels[p.images[t]];
    j["images"] = images;
    if (p.essential != 0) j["essential"] = p.labels[p.essential];
    nlohmann::json singular = nlohmann::json::array();
    for (int t = 1; t <= 4; ++t)
        if (p.singular[t]) singular.push_back(p.labels[t]);
    j["singular"] = singular;
    nlohmann::json degrees = nlohmann::json::object();
    for (int t = 1; t <= 4; ++t)
        if (p.degrees[t] != 0) degrees[p.labels[t]] = p.degrees[t];
    j["degrees"] = degrees;
    j["transcendental"] = p.transcendental;
    return j.dump(2);
}

Portrait portrait_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Portrait p;
    if (j.contains("points")) {
        auto pts = j["points"];
        for (int t = 1; t <= 4 && t <= (int)pts.size(); ++t)
            p.labels[t] = pts[t - 1].get<std::string>();
    }
    if (j.contains("transcendental"))
        p.transcendental = j["transcendental"].get<bool>();
    if (j.contains("essential"))
        p.essential = p.label_to_index(j["essential"].get<std::string>());
    if (j.contains("images"))
        for (auto& [key, val] : j["images"].items())
            p.images[p.label_to_index(key)] =
                p.label_to_index(val.get<std::string>());
    if (j.contains("singular"))
        for (auto& s : j["singular"])
            p.singular[p.label_to_index(s.get<std::string>())] = true;
    if (j.contains("degrees"))
        for (auto& [key, val] : j["degrees"].items())
            p.degrees[p.label_to_index(key)] = val.get<int>();
    if (j.contains("unmarked_singular_values"))
        p.unmarked_singular_values_exist =
            j["unmarked_singular_values"].get<bool>();
    return p;
}

} // namespace pullback

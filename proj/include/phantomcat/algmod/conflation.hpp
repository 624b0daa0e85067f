#pragma once

#include "module.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace phantomcat {

class conflation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact sequence B = X_t -> X_{t-1} -> ... -> X_0 -> A of length t, stored left to right.
/// objects has t+2 entries and maps has t+1 entries, maps[i] : objects[i] -> objects[i+1].
template <class F>
struct Conflation {
    std::vector<ModPtr<F>> objects;
    std::vector<ModuleMap<F>> maps;

    std::size_t length() const { return maps.size() - 1; }
    const ModPtr<F>& left() const { return objects.front(); }
    const ModPtr<F>& right() const { return objects.back(); }
    const ModuleMap<F>& inflation() const { return maps.front(); }
    const ModuleMap<F>& deflation() const { return maps.back(); }
};

/// Verifies exactness position by position; throws naming the first failing position.
template <class F>
Conflation<F> check_conflation(std::vector<ModPtr<F>> objects, std::vector<ModuleMap<F>> maps) {
    if (maps.size() < 2 || objects.size() != maps.size() + 1)
        throw conflation_error("a conflation of length t needs t+2 objects and t+1 maps");
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (!maps[i].source->same_as(*objects[i]) || !maps[i].target->same_as(*objects[i + 1]))
            throw conflation_error("map " + std::to_string(i) + " does not connect positions " + std::to_string(i) +
                                   " and " + std::to_string(i + 1));
    if (!maps.front().is_injective()) throw conflation_error("not exact at position 0: left map is not injective");
    if (!maps.back().is_surjective())
        throw conflation_error("not exact at position " + std::to_string(objects.size() - 1) +
                               ": right map is not surjective");
    for (std::size_t i = 1; i + 1 < objects.size(); ++i) {
        bool zero = (maps[i].matrix * maps[i - 1].matrix).is_zero();
        bool dims = rank(maps[i - 1].matrix) + rank(maps[i].matrix) == objects[i]->dim();
        if (!zero || !dims) throw conflation_error("not exact at position " + std::to_string(i));
    }
    return {std::move(objects), std::move(maps)};
}

template <class F>
Conflation<F> short_conflation(const ModuleMap<F>& inflation, const ModuleMap<F>& deflation) {
    return check_conflation<F>({inflation.source, inflation.target, deflation.target}, {inflation, deflation});
}

/// Splices a (ending at L) with b (starting at L); the joint map is the composite through L.
template <class F>
Conflation<F> splice(const Conflation<F>& a, const Conflation<F>& b) {
    if (!a.right()->same_as(*b.left())) throw conflation_error("splice: right end of the first is not left end of the second");
    std::vector<ModPtr<F>> objs(a.objects.begin(), a.objects.end() - 1);
    objs.insert(objs.end(), b.objects.begin() + 1, b.objects.end());
    std::vector<ModuleMap<F>> maps(a.maps.begin(), a.maps.end() - 1);
    maps.push_back(compose(b.maps.front(), a.maps.back()));
    maps.insert(maps.end(), b.maps.begin() + 1, b.maps.end());
    return check_conflation(std::move(objs), std::move(maps));
}

/// The length-one piece K_{i} -> X_i -> K_{i-1} of a conflation, using image factorizations.
template <class F>
std::vector<Conflation<F>> split_into_short(const Conflation<F>& c) {
    std::vector<Conflation<F>> out;
    ModuleMap<F> in = c.maps.front();
    for (std::size_t i = 1; i < c.maps.size(); ++i) {
        if (i + 1 == c.maps.size()) {
            out.push_back(short_conflation(in, c.maps[i]));
            break;
        }
        auto im = image_module(c.maps[i]);
        out.push_back(short_conflation(in, im.corestriction));
        in = im.inclusion;
    }
    return out;
}

} // namespace phantomcat

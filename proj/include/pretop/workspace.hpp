#pragma once

#include <map>
#include <string>
#include <vector>

#include "pretop/fintop.hpp"
#include "pretop/logic.hpp"
#include "pretop/sites.hpp"
#include "pretop/wtypes.hpp"

namespace pretop::cli {

/// Parsed description files: named categories, presheaves, sites, sets,
/// maps, spaces, signatures, squares, structures and formulas. Every object
/// is validated on entry and all cross-references resolve.
struct Workspace {
    std::map<std::string, CategoryRef> categories;
    std::map<std::string, Presheaf> presheaves;
    std::map<std::string, NatTrans> nats;
    std::map<std::string, sites::Site> sites_;
    std::map<std::string, FinSetObj> sets;
    std::map<std::string, FinSetMap> maps;
    std::map<std::string, FinTopSpace> spaces;
    std::map<std::string, wtypes::PolyFunctor> sigs;
    std::map<std::string, amc::Square> squares;
    std::map<std::string, logic::Structure> structures;
    std::map<std::string, std::string> formulas;  // raw text; parsed on use

    template <class M>
    const typename M::mapped_type& named(const M& m, const std::string& name,
                                         const std::string& kind) const {
        auto it = m.find(name);
        if (it == m.end()) throw Error("UnknownName", "no " + kind + " named '" + name + "'");
        return it->second;
    }
};

// Error("ParseError") with file and line on malformed input;
// Error("DuplicateName") on name reuse.
Workspace parse_workspace(const std::vector<std::string>& files);
Workspace parse_workspace_text(const std::string& text, const std::string& filename = "<memory>");

} // namespace pretop::cli

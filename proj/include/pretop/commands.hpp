#pragma once

#include "pretop/report.hpp"
#include "pretop/workspace.hpp"

namespace pretop::cli {

struct CmdOptions {
    std::size_t bound = 3;
    std::size_t depth = 3;
    std::size_t cap = 4;
    bool strict = false;
};

Report cmd_check_category(const Workspace& ws, const std::string& name);
Report cmd_check_site(const Workspace& ws, const std::string& name, const CmdOptions& opt);
Report cmd_saturate(const Workspace& ws, const std::string& site, const CmdOptions& opt);
Report cmd_sheafify(const Workspace& ws, const std::string& site, const std::string& presheaf,
                    const CmdOptions& opt);
Report cmd_wtype(const Workspace& ws, const std::string& sig, const CmdOptions& opt);
Report cmd_amc_square(const Workspace& ws, const std::string& map, const CmdOptions& opt);
Report cmd_rp_roundtrip(const Workspace& ws, const std::string& map, const std::string& rep,
                        const CmdOptions& opt);
Report cmd_complete(const Workspace& ws, const std::string& which, const CmdOptions& opt,
                    const std::string& carrier = "", const std::string& relation = "");
Report cmd_eval(const Workspace& ws, const std::string& formula, const std::string& structure,
                const std::string& stage, const CmdOptions& opt);

} // namespace pretop::cli

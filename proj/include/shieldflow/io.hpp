#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shieldflow/entropy.hpp"
#include "shieldflow/invariants.hpp"
#include "shieldflow/solver.hpp"
#include "shieldflow/studies.hpp"

namespace shieldflow::io {

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view s);
std::string fnv1a64_hex(std::string_view s);

// Columns: t,x,rho,u,rho_hat,m_hat,w,z (one row per cell per snapshot).
void write_snapshots_csv(const std::string& path,
                         const std::vector<Snapshot>& snaps, double x0,
                         double dx, const InvariantMap& map);

// Columns: t,dt,min_rho,max_speed,max_w,min_z,mass,entropy_total.
void write_monitors_csv(const std::string& path,
                        const std::vector<MonitorRow>& rows);

// Columns: t,x,cell_production,cumulative.
void write_budget_csv(const std::string& path, const BudgetReport& report);

// Columns: rho,p1,residual,pollution.
void write_lu_csv(const std::string& path, const LuReport& report);

// Columns: param,epsilon,min_rho,max_w_start,max_w_peak,mass_drift,steps,
//          aborted (one row per study level).
void write_levels_csv(const std::string& path, const StudyReport& report);

// Overlay table: x then one physical-density column per ladder level.
void write_overlay_csv(const std::string& path, const StudyReport& report);

}  // namespace shieldflow::io

#include "config.hpp"

namespace fsi
{

namespace
{

// Flexible leaflet across a pulsating channel flow.
// Channel 4 x 1, leaflet 0.0212 x 0.8 standing on the bottom wall.
// rho_f = rho_s = 100, mu_f = 10, mu_s = 1e7, inlet 15 y (2-y) sin(2 pi t).
const char * leaflet_across = R"(
[scenario]
name = leaflet_across
dt = 5e-4
t_end = 0.8
output_every = 4
[domain]
x0 = 0
y0 = 0
Lx = 4
Ly = 1
nx = 40
ny = 10
[fluid]
rho = 100
mu = 10
[solid]
shape = rectangle
rho = 100
mu = 1e7
x0 = 2.0
y0 = 0.0
width = 0.0212
height = 0.8
nx = 2
ny = 75
[bc]
left = dirichlet
left_ux = 15.0*y*(2-y)*sin(2*pi*t)
bottom = dirichlet
top = slip
right = none
[refine]
levels = 3
halo = 0.03
every = 5
[convection]
scheme = least_squares
)";

// Oscillating soft disc in a closed unit box, started from a periodic
// stream function; energy/mass conservation benchmark. Medium sizes.
const char * oscillating_disc = R"(
[scenario]
name = oscillating_disc
dt = 1e-3
t_end = 1.0
output_every = 5
[domain]
Lx = 1
Ly = 1
nx = 40
ny = 40
[fluid]
rho = 1.0
mu = 1e-3
[solid]
shape = disc
rho = 1.0
mu = 1.0
cx = 0.5
cy = 0.5
radius = 0.2
boundary_nodes = 224
[bc]
left = dirichlet
right = dirichlet
bottom = dirichlet
top = dirichlet
[ic]
type = stream_function
psi0 = 5.0e-2
a = 6.283185307179586
b = 6.283185307179586
[refine]
levels = 2
halo = 0.04
every = 10
[convection]
scheme = least_squares
)";

// Flexible leaflet behind a rigid square block, oriented along a uniform
// stream (vortex-shedding driven oscillation).
const char * leaflet_along = R"(
[scenario]
name = leaflet_along
dt = 1e-3
t_end = 10.0
output_every = 5
[domain]
x0 = 0
y0 = 0
Lx = 19.5
Ly = 12
nx = 39
ny = 24
hole = 4.5 5.5 5.5 6.5
[fluid]
rho = 1.18e-3
mu = 1.82e-4
[solid]
shape = rectangle
rho = 0.1
mu = 9.2593e5
x0 = 5.5
y0 = 5.97
width = 4.0
height = 0.06
nx = 100
ny = 2
[bc]
left = dirichlet
left_ux = 51.3
bottom = slip
top = slip
right = none
hole = dirichlet
[refine]
levels = 4
halo = 0.09
every = 3
box1 = 4.0 4.5 11.0 7.5 2
[convection]
scheme = least_squares
)";

// Soft disc stirred by a lid-driven cavity flow.
const char * cavity_disc = R"(
[scenario]
name = cavity_disc
dt = 1e-3
t_end = 1.0
output_every = 10
[domain]
Lx = 1
Ly = 1
nx = 32
ny = 32
[fluid]
rho = 1.0
mu = 0.01
[solid]
shape = disc
rho = 1.0
mu = 0.1
cx = 0.6
cy = 0.5
radius = 0.2
boundary_nodes = 160
[bc]
left = dirichlet
right = dirichlet
bottom = dirichlet
top = dirichlet
top_ux = 1
[refine]
levels = 2
halo = 0.05
every = 10
[convection]
scheme = least_squares
)";

// Nearly rigid disc falling in a closed-bottom channel under gravity;
// terminal velocity benchmark. Fine sizes (80 boundary nodes).
const char * falling_disc = R"(
[scenario]
name = falling_disc
dt = 0.005
t_end = 1.0
output_every = 1
[domain]
x0 = 0
y0 = 0
Lx = 2
Ly = 4
nx = 40
ny = 80
[fluid]
rho = 1.0
mu = 1.0
gx = 0
gy = -980
[solid]
shape = disc
rho = 1.2
mu = 1e8
cx = 1.0
cy = 3.5
radius = 0.0625
boundary_nodes = 80
[bc]
left = dirichlet
right = dirichlet
bottom = dirichlet
top = none
[refine]
levels = 3
halo = 0.03
every = 5
[convection]
scheme = least_squares
)";

} // namespace

KeyValues preset_kv(const std::string & name)
{
  const char * text = nullptr;
  if (name == "leaflet_across")
    text = leaflet_across;
  else if (name == "oscillating_disc")
    text = oscillating_disc;
  else if (name == "leaflet_along")
    text = leaflet_along;
  else if (name == "cavity_disc")
    text = cavity_disc;
  else if (name == "falling_disc")
    text = falling_disc;
  else
    throw SimError("config", "unknown preset '" + name + "'");
  return parse_ini(text);
}

std::vector<std::string> preset_names()
{
  return {"leaflet_across", "oscillating_disc", "leaflet_along", "cavity_disc",
          "falling_disc"};
}

} // namespace fsi

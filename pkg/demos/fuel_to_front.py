"""From a fuel bed description to a fire front.

Walks the whole pipeline by hand: a fuel bed and wind/slope environment
are resolved into spread rates (ft/min), the rates are converted to the
plane's working units (km per hour here), the converted rates define a
wind-driven spread frame, and the frame's one-hour spherical front is
sampled and printed.  This is exactly what a scenario block

    model: {fuel: {...}, env: {...}}       # with plane_unit: km

does internally.  Note the conversion matters: the model's head-rate
validity bound couples the rate with the wind speed, and this fuel case
only satisfies it in km/h.

Run:  python3 demos/fuel_to_front.py
"""

import numpy as np

from firefront import Environment, FuelBed, spherical_front, spread_chain
from firefront.scenario import build_model

# --------------------------------------------------- fuel and environment
fuel = FuelBed(sigma=3500.0,   # surface-area-to-volume ratio, 1/ft
               w_o=0.034,      # oven-dry load, lb/ft^2
               delta=1.0,      # bed depth, ft
               M_x=0.12,       # moisture of extinction
               M_f=0.05)       # fuel moisture
env = Environment(U=440.0,     # wind, ft/min (5 mph)
                  tan_phi=0.2, # slope steepness
                  theta_hat=0.0)

chain = spread_chain(fuel, env)
print("spread-parameter chain (rates in ft/min):")
for key in ("beta", "beta_op", "Gamma", "I_R", "xi", "R0", "phi_w", "phi_s",
            "R_H", "R_B"):
    print(f"  {key:8s} = {chain[key]:.6g}")

# ------------------------------------------------------------ spread frame
model = build_model(
    {"fuel": {"sigma": 3500.0, "w_o": 0.034, "delta": 1.0,
              "M_x": 0.12, "M_f": 0.05},
     "env": {"U": {"value": 440.0, "unit": "ft/min"},
             "tan_phi": 0.2, "theta_hat_deg": 0.0}},
    plane_unit="km",
)
print("\nmodel:", model.kind, "(rates converted to km/h)")
print(f"  head rate : {model.speed(0.0, 0.0, 0.0):.4f} km/h")
print(f"  back rate : {model.speed(0.0, 0.0, np.pi):.6f} km/h")
report = model.validity_report()
for check in report.checks:
    flag = "ok " if check.ok else ("SOFT" if check.severity == "soft" else "FAIL")
    print(f"  [{flag}] {check.name}: {check.detail}")

# --------------------------------------------------------- one-hour front
front = spherical_front(model, p=(0.0, 0.0), T=1.0, n=16)
print("\none-hour front (km, wind toward +x):")
for x, y in front.points:
    theta = np.arctan2(y, x)
    print(f"  theta={np.degrees(theta):7.1f} deg   x={x:9.4f}   y={y:9.4f}")
print(f"enclosed area: {front.area * 100.0:.2f} hectares")

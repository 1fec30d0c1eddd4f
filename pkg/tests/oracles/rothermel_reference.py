"""Independent high-precision reference for the spread-rate chain.

Evaluates every intermediate of the no-wind/wind/slope spread-parameter
chain with mpmath at 50 decimal digits, written directly from the
published table of equations and sharing no code with the package.  Run
it to regenerate the frozen constants used by tests/test_rothermel.py:

    python3 tests/oracles/rothermel_reference.py
"""

import mpmath as mp

mp.mp.dps = 50


def chain(sigma, w_o, delta, M_x, M_f, h, S_T, S_e, rho_p, U, tan_phi):
    sigma, w_o, delta = mp.mpf(sigma), mp.mpf(w_o), mp.mpf(delta)
    M_x, M_f = mp.mpf(M_x), mp.mpf(M_f)
    h, S_T, S_e, rho_p = map(mp.mpf, (h, S_T, S_e, rho_p))
    U, tan_phi = mp.mpf(U), mp.mpf(tan_phi)

    rho_b = w_o / delta
    beta = rho_b / rho_p
    beta_op = mp.mpf("3.348") * sigma ** mp.mpf("-0.8189")
    A = mp.mpf("133") * sigma ** mp.mpf("-0.7913")
    Gamma_max = sigma ** mp.mpf("1.5") / (mp.mpf("495")
                                          + mp.mpf("0.0594") * sigma ** mp.mpf("1.5"))
    rr = beta / beta_op
    Gamma = Gamma_max * rr ** A * mp.e ** (A * (1 - rr))
    w_n = w_o * (1 - S_T)
    r_M = min(M_f / M_x, mp.mpf(1))
    eta_M = (1 - mp.mpf("2.59") * r_M + mp.mpf("5.11") * r_M ** 2
             - mp.mpf("3.52") * r_M ** 3)
    eta_s = min(mp.mpf("0.174") * S_e ** mp.mpf("-0.19"), mp.mpf(1))
    I_R = Gamma * w_n * h * eta_M * eta_s
    xi = (mp.e ** ((mp.mpf("0.792") + mp.mpf("0.681") * sigma ** mp.mpf("0.5"))
                   * (beta + mp.mpf("0.1")))
          / (mp.mpf("192") + mp.mpf("0.2595") * sigma))
    eps_depth = mp.e ** (mp.mpf("-138") / delta)
    eps_sigma = mp.e ** (mp.mpf("-138") / sigma)
    Q_ig = mp.mpf("250") + mp.mpf("1116") * M_x
    R0 = I_R * xi
    R0_var = I_R * xi / (rho_b * eps_sigma * Q_ig)
    C = mp.mpf("7.47") * mp.e ** (mp.mpf("-0.133") * sigma ** mp.mpf("0.55"))
    B = mp.mpf("0.02526") * beta ** mp.mpf("0.54")
    E = mp.mpf("0.715") * mp.e ** (mp.mpf("-3.59e-4") * delta)
    phi_w = C * U ** B * rr ** (-E) if U > 0 else mp.mpf(0)
    phi_s = mp.mpf("5.275") * beta ** mp.mpf("-0.3") * tan_phi ** 2
    R_H = R0 * (1 + phi_w + phi_s)
    z = 1 + mp.mpf("0.25") * U
    e = mp.sqrt(z ** 2 - 1) / z
    R_B = R_H * (1 - e) / (1 + e)
    b = (R_H + R_B) / 2
    c = (R_H - R_B) / 2
    a = z / (2 * (R_B + R_H))
    return dict(rho_b=rho_b, beta=beta, beta_op=beta_op, A=A,
                Gamma_max=Gamma_max, Gamma=Gamma, w_n=w_n, r_M=r_M,
                eta_M=eta_M, eta_s=eta_s, I_R=I_R, xi=xi,
                eps_depth=eps_depth, eps_sigma=eps_sigma, Q_ig=Q_ig, R0=R0,
                R0_var=R0_var, C=C, B=B, E=E, phi_w=phi_w, phi_s=phi_s,
                R_H=R_H, z=z, e=e, R_B=R_B, a=a, b=b, c=c)


def show(tag, values):
    print("###", tag)
    for key, val in values.items():
        print(f"{key} = {mp.nstr(val, 17)}")
    print()


if __name__ == "__main__":
    # Case A: fine grassy bed, no wind, no slope
    show("A: sigma=3500 w_o=0.034 delta=1 M_x=0.12 M_f=0.05 U=0 tan_phi=0",
         chain(3500, "0.034", 1, "0.12", "0.05", 8000, "0.0555", "0.010",
               32, 0, 0))
    # Case B: same bed, 5 mph wind (440 ft/min), 20% slope
    show("B: same fuel, U=440 ft/min tan_phi=0.2",
         chain(3500, "0.034", 1, "0.12", "0.05", 8000, "0.0555", "0.010",
               32, 440, "0.2"))

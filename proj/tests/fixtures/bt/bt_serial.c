/*
 * Copyright 2026 The ompdiff Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <stdio.h>

double u[10][10][10][5];
double rhs[10][10][10][5];
double forcing[10][10][10][5];
double rho_i[10][10][10];
double us[10][10][10];
double vs[10][10][10];
double ws[10][10][10];
double qs[10][10][10];
double square[10][10][10];
double ce[5][13];
double dnxm1, dnym1, dnzm1;
double tx2, ty2, tz2, dx1tx1, dy1ty1, dz1tz1;
double c1, c2, dssp, dt;

void set_constants(void)
{
  int m, n;
  for (m = 0; m < 5; m++)
    for (n = 0; n < 13; n++)
      ce[m][n] = 0.5 + 0.1 * m - 0.02 * n;
  dnxm1 = 1.0 / 9.0;
  dnym1 = 1.0 / 9.0;
  dnzm1 = 1.0 / 9.0;
  tx2 = 4.5;
  ty2 = 4.5;
  tz2 = 4.5;
  dx1tx1 = 0.6075;
  dy1ty1 = 0.6075;
  dz1tz1 = 0.8100;
  c1 = 1.4;
  c2 = 0.4;
  dssp = 0.025;
  dt = 0.0008;
}

void exact_solution(double xi, double eta, double zeta, double dtemp[5])
{
  int m;
  for (m = 0; m < 5; m++) {
    dtemp[m] = ce[m][0] + xi * (ce[m][1] + xi * (ce[m][4] + xi * (ce[m][7] + xi * ce[m][10]))) +
               eta * (ce[m][2] + eta * (ce[m][5] + eta * (ce[m][8] + eta * ce[m][11]))) +
               zeta * (ce[m][3] + zeta * (ce[m][6] + zeta * (ce[m][9] + zeta * ce[m][12])));
  }
}

void initialize(void)
{
  int i, j, k, m, ix, iy, iz;
  double xi, eta, zeta, Pface[2][3][5], Pxi, Peta, Pzeta, temp[5];

  {
    for (k = 0; k < 10; k++)
      for (j = 0; j < 10; j++)
        for (i = 0; i < 10; i++)
          for (m = 0; m < 5; m++)
            u[k][j][i][m] = 1.0;

    for (k = 0; k < 10; k++) {
      zeta = k * dnzm1;
      for (j = 0; j < 10; j++) {
        eta = j * dnym1;
        for (i = 0; i < 10; i++) {
          xi = i * dnxm1;
          for (ix = 0; ix < 2; ix++) {
            exact_solution((double) ix, eta, zeta, temp);
            for (m = 0; m < 5; m++)
              Pface[ix][0][m] = temp[m];
          }
          for (iy = 0; iy < 2; iy++) {
            exact_solution(xi, (double) iy, zeta, temp);
            for (m = 0; m < 5; m++)
              Pface[iy][1][m] = temp[m];
          }
          for (iz = 0; iz < 2; iz++) {
            exact_solution(xi, eta, (double) iz, temp);
            for (m = 0; m < 5; m++)
              Pface[iz][2][m] = temp[m];
          }
          for (m = 0; m < 5; m++) {
            Pxi = xi * Pface[1][0][m] + (1.0 - xi) * Pface[0][0][m];
            Peta = eta * Pface[1][1][m] + (1.0 - eta) * Pface[0][1][m];
            Pzeta = zeta * Pface[1][2][m] + (1.0 - zeta) * Pface[0][2][m];
            u[k][j][i][m] = Pxi + Peta + Pzeta - Pxi * Peta - Pxi * Pzeta - Peta * Pzeta +
                            Pxi * Peta * Pzeta;
          }
        }
      }
    }

    for (k = 0; k < 10; k++) {
      zeta = k * dnzm1;
      for (j = 0; j < 10; j++) {
        eta = j * dnym1;
        exact_solution(0.0, eta, zeta, temp);
        for (m = 0; m < 5; m++)
          u[k][j][0][m] = temp[m];
      }
    }

    for (k = 0; k < 10; k++) {
      zeta = k * dnzm1;
      for (j = 0; j < 10; j++) {
        eta = j * dnym1;
        exact_solution(1.0, eta, zeta, temp);
        for (m = 0; m < 5; m++)
          u[k][j][9][m] = temp[m];
      }
    }

    for (k = 0; k < 10; k++) {
      zeta = k * dnzm1;
      for (i = 0; i < 10; i++) {
        xi = i * dnxm1;
        exact_solution(xi, 0.0, zeta, temp);
        for (m = 0; m < 5; m++)
          u[k][0][i][m] = temp[m];
      }
    }

    for (k = 0; k < 10; k++) {
      zeta = k * dnzm1;
      for (i = 0; i < 10; i++) {
        xi = i * dnxm1;
        exact_solution(xi, 1.0, zeta, temp);
        for (m = 0; m < 5; m++)
          u[k][9][i][m] = temp[m];
      }
    }

    for (j = 0; j < 10; j++) {
      eta = j * dnym1;
      for (i = 0; i < 10; i++) {
        xi = i * dnxm1;
        exact_solution(xi, eta, 0.0, temp);
        for (m = 0; m < 5; m++)
          u[0][j][i][m] = temp[m];
      }
    }

    for (j = 0; j < 10; j++) {
      eta = j * dnym1;
      for (i = 0; i < 10; i++) {
        xi = i * dnxm1;
        exact_solution(xi, eta, 1.0, temp);
        for (m = 0; m < 5; m++)
          u[9][j][i][m] = temp[m];
      }
    }
  }
}

void compute_rhs(void)
{
  int i, j, k, m;
  double rho_inv, uijk, up1, um1, vijk, vp1, vm1, wijk, wp1, wm1;

  {
    for (k = 0; k < 10; k++) {
      for (j = 0; j < 10; j++) {
        for (i = 0; i < 10; i++) {
          rho_inv = 1.0 / u[k][j][i][0];
          rho_i[k][j][i] = rho_inv;
          us[k][j][i] = u[k][j][i][1] * rho_inv;
          vs[k][j][i] = u[k][j][i][2] * rho_inv;
          ws[k][j][i] = u[k][j][i][3] * rho_inv;
          square[k][j][i] = 0.5 * (u[k][j][i][1] * u[k][j][i][1] + u[k][j][i][2] * u[k][j][i][2] +
                                   u[k][j][i][3] * u[k][j][i][3]) * rho_inv;
          qs[k][j][i] = square[k][j][i] * rho_inv;
        }
      }
    }

    for (k = 0; k < 10; k++) {
      for (j = 0; j < 10; j++)
        for (i = 0; i < 10; i++)
          for (m = 0; m < 5; m++)
            rhs[k][j][i][m] = forcing[k][j][i][m];
    }

    for (k = 1; k < 9; k++) {
      for (j = 1; j < 9; j++) {
        for (i = 1; i < 9; i++) {
          uijk = us[k][j][i];
          up1 = us[k][j][i + 1];
          um1 = us[k][j][i - 1];
          rhs[k][j][i][0] = rhs[k][j][i][0] + dx1tx1 * (u[k][j][i + 1][0] - 2.0 * u[k][j][i][0] + u[k][j][i - 1][0]) -
                            tx2 * (u[k][j][i + 1][1] - u[k][j][i - 1][1]);
          rhs[k][j][i][1] = rhs[k][j][i][1] + dx1tx1 * (u[k][j][i + 1][1] - 2.0 * u[k][j][i][1] + u[k][j][i - 1][1]) -
                            tx2 * (u[k][j][i + 1][1] * up1 - u[k][j][i - 1][1] * um1 +
                                   (u[k][j][i + 1][4] - square[k][j][i + 1] - u[k][j][i - 1][4] + square[k][j][i - 1]) * c2);
          rhs[k][j][i][2] = rhs[k][j][i][2] + dx1tx1 * (vs[k][j][i + 1] - 2.0 * vs[k][j][i] + vs[k][j][i - 1]) -
                            tx2 * (u[k][j][i + 1][2] * up1 - u[k][j][i - 1][2] * um1);
          rhs[k][j][i][3] = rhs[k][j][i][3] + dx1tx1 * (ws[k][j][i + 1] - 2.0 * ws[k][j][i] + ws[k][j][i - 1]) -
                            tx2 * (u[k][j][i + 1][3] * up1 - u[k][j][i - 1][3] * um1);
          rhs[k][j][i][4] = rhs[k][j][i][4] + dx1tx1 * (qs[k][j][i + 1] - 2.0 * qs[k][j][i] + qs[k][j][i - 1]) +
                            uijk * (rho_i[k][j][i + 1] - rho_i[k][j][i - 1]) -
                            tx2 * ((c1 * u[k][j][i + 1][4] - c2 * square[k][j][i + 1]) * up1 -
                                   (c1 * u[k][j][i - 1][4] - c2 * square[k][j][i - 1]) * um1);
        }
      }
    }

    for (k = 1; k < 9; k++) {
      for (j = 1; j < 9; j++) {
        for (i = 1; i < 9; i++) {
          for (m = 0; m < 5; m++) {
            if (i == 1) {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (5.0 * u[k][j][i][m] - 4.0 * u[k][j][i + 1][m] + u[k][j][i + 2][m]);
            } else if (i == 2) {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (-4.0 * u[k][j][i - 1][m] + 6.0 * u[k][j][i][m] -
                                                          4.0 * u[k][j][i + 1][m] + u[k][j][i + 2][m]);
            } else if (i == 7) {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (u[k][j][i - 2][m] - 4.0 * u[k][j][i - 1][m] +
                                                          6.0 * u[k][j][i][m] - 4.0 * u[k][j][i + 1][m]);
            } else if (i == 8) {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (u[k][j][i - 2][m] - 4.0 * u[k][j][i - 1][m] + 5.0 * u[k][j][i][m]);
            } else {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (u[k][j][i - 2][m] - 4.0 * u[k][j][i - 1][m] + 6.0 * u[k][j][i][m] -
                                                          4.0 * u[k][j][i + 1][m] + u[k][j][i + 2][m]);
            }
          }
        }
      }
    }

    for (k = 1; k < 9; k++) {
      for (j = 1; j < 9; j++) {
        for (i = 1; i < 9; i++) {
          vijk = vs[k][j][i];
          vp1 = vs[k][j + 1][i];
          vm1 = vs[k][j - 1][i];
          rhs[k][j][i][0] = rhs[k][j][i][0] + dy1ty1 * (u[k][j + 1][i][0] - 2.0 * u[k][j][i][0] + u[k][j - 1][i][0]) -
                            ty2 * (u[k][j + 1][i][2] - u[k][j - 1][i][2]);
          rhs[k][j][i][1] = rhs[k][j][i][1] + dy1ty1 * (us[k][j + 1][i] - 2.0 * us[k][j][i] + us[k][j - 1][i]) -
                            ty2 * (u[k][j + 1][i][1] * vp1 - u[k][j - 1][i][1] * vm1);
          rhs[k][j][i][2] = rhs[k][j][i][2] + dy1ty1 * (u[k][j + 1][i][2] - 2.0 * u[k][j][i][2] + u[k][j - 1][i][2]) -
                            ty2 * (u[k][j + 1][i][2] * vp1 - u[k][j - 1][i][2] * vm1 +
                                   (u[k][j + 1][i][4] - square[k][j + 1][i] - u[k][j - 1][i][4] + square[k][j - 1][i]) * c2);
          rhs[k][j][i][3] = rhs[k][j][i][3] + dy1ty1 * (ws[k][j + 1][i] - 2.0 * ws[k][j][i] + ws[k][j - 1][i]) -
                            ty2 * (u[k][j + 1][i][3] * vp1 - u[k][j - 1][i][3] * vm1);
          rhs[k][j][i][4] = rhs[k][j][i][4] + dy1ty1 * (qs[k][j + 1][i] - 2.0 * qs[k][j][i] + qs[k][j - 1][i]) +
                            vijk * (rho_i[k][j + 1][i] - rho_i[k][j - 1][i]) -
                            ty2 * ((c1 * u[k][j + 1][i][4] - c2 * square[k][j + 1][i]) * vp1 -
                                   (c1 * u[k][j - 1][i][4] - c2 * square[k][j - 1][i]) * vm1);
        }
      }
    }

    for (k = 1; k < 9; k++) {
      for (j = 1; j < 9; j++) {
        for (i = 1; i < 9; i++) {
          for (m = 0; m < 5; m++) {
            if (j == 1) {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (5.0 * u[k][j][i][m] - 4.0 * u[k][j + 1][i][m] + u[k][j + 2][i][m]);
            } else if (j == 2) {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (-4.0 * u[k][j - 1][i][m] + 6.0 * u[k][j][i][m] -
                                                          4.0 * u[k][j + 1][i][m] + u[k][j + 2][i][m]);
            } else if (j == 7) {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (u[k][j - 2][i][m] - 4.0 * u[k][j - 1][i][m] +
                                                          6.0 * u[k][j][i][m] - 4.0 * u[k][j + 1][i][m]);
            } else if (j == 8) {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (u[k][j - 2][i][m] - 4.0 * u[k][j - 1][i][m] + 5.0 * u[k][j][i][m]);
            } else {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (u[k][j - 2][i][m] - 4.0 * u[k][j - 1][i][m] + 6.0 * u[k][j][i][m] -
                                                          4.0 * u[k][j + 1][i][m] + u[k][j + 2][i][m]);
            }
          }
        }
      }
    }

    for (k = 1; k < 9; k++) {
      for (j = 1; j < 9; j++) {
        for (i = 1; i < 9; i++) {
          wijk = ws[k][j][i];
          wp1 = ws[k + 1][j][i];
          wm1 = ws[k - 1][j][i];
          rhs[k][j][i][0] = rhs[k][j][i][0] + dz1tz1 * (u[k + 1][j][i][0] - 2.0 * u[k][j][i][0] + u[k - 1][j][i][0]) -
                            tz2 * (u[k + 1][j][i][3] - u[k - 1][j][i][3]);
          rhs[k][j][i][1] = rhs[k][j][i][1] + dz1tz1 * (us[k + 1][j][i] - 2.0 * us[k][j][i] + us[k - 1][j][i]) -
                            tz2 * (u[k + 1][j][i][1] * wp1 - u[k - 1][j][i][1] * wm1);
          rhs[k][j][i][2] = rhs[k][j][i][2] + dz1tz1 * (vs[k + 1][j][i] - 2.0 * vs[k][j][i] + vs[k - 1][j][i]) -
                            tz2 * (u[k + 1][j][i][2] * wp1 - u[k - 1][j][i][2] * wm1);
          rhs[k][j][i][3] = rhs[k][j][i][3] + dz1tz1 * (u[k + 1][j][i][3] - 2.0 * u[k][j][i][3] + u[k - 1][j][i][3]) -
                            tz2 * (u[k + 1][j][i][3] * wp1 - u[k - 1][j][i][3] * wm1 +
                                   (u[k + 1][j][i][4] - square[k + 1][j][i] - u[k - 1][j][i][4] + square[k - 1][j][i]) * c2);
          rhs[k][j][i][4] = rhs[k][j][i][4] + dz1tz1 * (qs[k + 1][j][i] - 2.0 * qs[k][j][i] + qs[k - 1][j][i]) +
                            wijk * (rho_i[k + 1][j][i] - rho_i[k - 1][j][i]) -
                            tz2 * ((c1 * u[k + 1][j][i][4] - c2 * square[k + 1][j][i]) * wp1 -
                                   (c1 * u[k - 1][j][i][4] - c2 * square[k - 1][j][i]) * wm1);
        }
      }
    }

    for (k = 1; k < 3; k++) {
      for (j = 1; j < 9; j++) {
        for (i = 1; i < 9; i++) {
          for (m = 0; m < 5; m++) {
            if (k == 1) {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (5.0 * u[k][j][i][m] - 4.0 * u[k + 1][j][i][m] + u[k + 2][j][i][m]);
            } else {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (-4.0 * u[k - 1][j][i][m] + 6.0 * u[k][j][i][m] -
                                                          4.0 * u[k + 1][j][i][m] + u[k + 2][j][i][m]);
            }
          }
        }
      }
    }

    for (k = 3; k < 7; k++) {
      for (j = 1; j < 9; j++)
        for (i = 1; i < 9; i++)
          for (m = 0; m < 5; m++)
            rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (u[k - 2][j][i][m] - 4.0 * u[k - 1][j][i][m] + 6.0 * u[k][j][i][m] -
                                                        4.0 * u[k + 1][j][i][m] + u[k + 2][j][i][m]);
    }

    for (k = 7; k < 9; k++) {
      for (j = 1; j < 9; j++) {
        for (i = 1; i < 9; i++) {
          for (m = 0; m < 5; m++) {
            if (k == 7) {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (u[k - 2][j][i][m] - 4.0 * u[k - 1][j][i][m] +
                                                          6.0 * u[k][j][i][m] - 4.0 * u[k + 1][j][i][m]);
            } else {
              rhs[k][j][i][m] = rhs[k][j][i][m] - dssp * (u[k - 2][j][i][m] - 4.0 * u[k - 1][j][i][m] + 5.0 * u[k][j][i][m]);
            }
          }
        }
      }
    }

    for (k = 1; k < 9; k++) {
      for (j = 1; j < 9; j++)
        for (i = 1; i < 9; i++)
          for (m = 0; m < 5; m++)
            rhs[k][j][i][m] = rhs[k][j][i][m] * dt;
    }
  }
}

int main(void)
{
  int i, j, k, m;
  double usum, rsum;

  set_constants();
  initialize();
  for (k = 0; k < 10; k++)
    for (j = 0; j < 10; j++)
      for (i = 0; i < 10; i++)
        for (m = 0; m < 5; m++)
          forcing[k][j][i][m] = 0.01 * (m + 1) * (i - j + 2 * k) / 10.0;
  compute_rhs();
  usum = 0.0;
  rsum = 0.0;
  for (k = 0; k < 10; k++)
    for (j = 0; j < 10; j++)
      for (i = 0; i < 10; i++)
        for (m = 0; m < 5; m++) {
          usum = usum + u[k][j][i][m] * (1.0 + 0.001 * (i + 2 * j + 3 * k + m));
          rsum = rsum + rhs[k][j][i][m] * (1.0 + 0.001 * (i + 2 * j + 3 * k + m));
        }
  printf("BT u checksum %.12e\n", usum);
  printf("BT rhs checksum %.12e\n", rsum);
  return 0;
}

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

double z[18][18][18];
double gten[16][10][2];
int gj1[16][10][2];
int gj2[16][10][2];
int gj3[16][10][2];
int jg[10][6];

double randlc(double *x, double a)
{
  double r23, r46, t23, t46, t1, t2, t3, t4, a1, a2, x1, x2, z;

  r23 = 1.1920928955078125e-07;
  r46 = r23 * r23;
  t23 = 8388608.0;
  t46 = t23 * t23;
  t1 = r23 * a;
  a1 = (int) t1;
  a2 = a - t23 * a1;
  t1 = r23 * (*x);
  x1 = (int) t1;
  x2 = *x - t23 * x1;
  t1 = a1 * x2 + a2 * x1;
  t2 = (int) (r23 * t1);
  z = t1 - t23 * t2;
  t3 = t23 * z + a2 * x2;
  t4 = (int) (r46 * t3);
  *x = t3 - t46 * t4;
  return r46 * (*x);
}

void bubble(double ten[10][2], int j1[10][2], int j2[10][2], int j3[10][2], int m, int ind)
{
  double temp;
  int i, j_temp;

  if (ind == 1) {
    for (i = 0; i < m - 1; i++) {
      if (ten[i][ind] > ten[i + 1][ind]) {
        temp = ten[i + 1][ind];
        ten[i + 1][ind] = ten[i][ind];
        ten[i][ind] = temp;
        j_temp = j1[i + 1][ind];
        j1[i + 1][ind] = j1[i][ind];
        j1[i][ind] = j_temp;
        j_temp = j2[i + 1][ind];
        j2[i + 1][ind] = j2[i][ind];
        j2[i][ind] = j_temp;
        j_temp = j3[i + 1][ind];
        j3[i + 1][ind] = j3[i][ind];
        j3[i][ind] = j_temp;
      } else {
        return;
      }
    }
  } else {
    for (i = 0; i < m - 1; i++) {
      if (ten[i][ind] < ten[i + 1][ind]) {
        temp = ten[i + 1][ind];
        ten[i + 1][ind] = ten[i][ind];
        ten[i][ind] = temp;
        j_temp = j1[i + 1][ind];
        j1[i + 1][ind] = j1[i][ind];
        j1[i][ind] = j_temp;
        j_temp = j2[i + 1][ind];
        j2[i + 1][ind] = j2[i][ind];
        j2[i][ind] = j_temp;
        j_temp = j3[i + 1][ind];
        j3[i + 1][ind] = j3[i][ind];
        j3[i][ind] = j_temp;
      } else {
        return;
      }
    }
  }
}

void zran3(void)
{
  int i, i1, i2, i3, t, m, myid, best_t, best_i;
  double x0, best;

  x0 = 314159265.0;
  for (i3 = 1; i3 < 17; i3++)
    for (i2 = 1; i2 < 17; i2++)
      for (i1 = 1; i1 < 17; i1++)
        z[i3][i2][i1] = randlc(&x0, 1220703125.0);

  {
    myid = 0;
    for (t = 0; t < 16; t++) {
      for (i = 0; i < 10; i++) {
        gten[t][i][1] = 0.0;
        gj1[t][i][1] = 0;
        gj2[t][i][1] = 0;
        gj3[t][i][1] = 0;
        gten[t][i][0] = 1.0;
        gj1[t][i][0] = 0;
        gj2[t][i][0] = 0;
        gj3[t][i][0] = 0;
      }
    }

    for (i3 = 1; i3 < 17; i3++) {
      for (i2 = 1; i2 < 17; i2++) {
        for (i1 = 1; i1 < 17; i1++) {
          if (z[i3][i2][i1] > gten[myid][0][1]) {
            gten[myid][0][1] = z[i3][i2][i1];
            gj1[myid][0][1] = i1;
            gj2[myid][0][1] = i2;
            gj3[myid][0][1] = i3;
            bubble(gten[myid], gj1[myid], gj2[myid], gj3[myid], 10, 1);
          }
          if (z[i3][i2][i1] < gten[myid][0][0]) {
            gten[myid][0][0] = z[i3][i2][i1];
            gj1[myid][0][0] = i1;
            gj2[myid][0][0] = i2;
            gj3[myid][0][0] = i3;
            bubble(gten[myid], gj1[myid], gj2[myid], gj3[myid], 10, 0);
          }
        }
      }
    }

    for (i3 = 0; i3 < 18; i3++) {
      for (i2 = 0; i2 < 18; i2++)
        for (i1 = 0; i1 < 18; i1++)
          z[i3][i2][i1] = 0.0;
    }
  }

  for (m = 0; m < 10; m++) {
    best = 0.0;
    best_t = 0;
    best_i = 0;
    for (t = 0; t < 16; t++) {
      for (i = 0; i < 10; i++) {
        if (gten[t][i][1] > best) {
          best = gten[t][i][1];
          best_t = t;
          best_i = i;
        }
      }
    }
    jg[m][0] = gj1[best_t][best_i][1];
    jg[m][1] = gj2[best_t][best_i][1];
    jg[m][2] = gj3[best_t][best_i][1];
    gten[best_t][best_i][1] = 0.0;
    best = 1.0;
    best_t = 0;
    best_i = 0;
    for (t = 0; t < 16; t++) {
      for (i = 0; i < 10; i++) {
        if (gten[t][i][0] < best) {
          best = gten[t][i][0];
          best_t = t;
          best_i = i;
        }
      }
    }
    jg[m][3] = gj1[best_t][best_i][0];
    jg[m][4] = gj2[best_t][best_i][0];
    jg[m][5] = gj3[best_t][best_i][0];
    gten[best_t][best_i][0] = 1.0;
  }

  for (m = 0; m < 10; m++) {
    z[jg[m][5]][jg[m][4]][jg[m][3]] = -1.0;
    z[jg[m][2]][jg[m][1]][jg[m][0]] = 1.0;
  }
}

int main(void)
{
  int i1, i2, i3, m;
  double zsum;
  long long pos;

  zran3();
  zsum = 0.0;
  for (i3 = 0; i3 < 18; i3++)
    for (i2 = 0; i2 < 18; i2++)
      for (i1 = 0; i1 < 18; i1++)
        zsum = zsum + z[i3][i2][i1] * (i1 + 2 * i2 + 3 * i3 + 1);
  pos = 0;
  for (m = 0; m < 10; m++)
    pos = pos + jg[m][0] + 18 * jg[m][1] + 324 * jg[m][2] - jg[m][3] - 18 * jg[m][4] - 324 * jg[m][5];
  printf("MG zran3 weighted sum %.6f\n", zsum);
  printf("MG zran3 position key %lld\n", pos);
  return 0;
}

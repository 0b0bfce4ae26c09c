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
#include <math.h>

double x[512];
double q[10];

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

void vranlc(int n, double *x, double a, double y[])
{
  int i;
  for (i = 0; i < n; i++)
    y[i] = randlc(x, a);
}

int main(void)
{
  int i, k, kk, ik, l, k_offset;
  double t1, t2, t3, t4, x1, x2, an, sx, sy, gc;

  for (i = 0; i < 512; i++)
    x[i] = -1.0e99;

  t1 = 1220703125.0;
  for (i = 0; i < 9; i++)
    t2 = randlc(&t1, t1);
  an = t1;
  sx = 0.0;
  sy = 0.0;
  gc = 0.0;

  for (i = 0; i < 10; i++)
    q[i] = 0.0;

  k_offset = -1;
  {
    for (k = 1; k <= 32; k++) {
      kk = k_offset + k;
      t1 = 271828183.0;
      t2 = an;
      for (i = 1; i <= 100; i++) {
        if (kk > 0) {
          ik = kk / 2;
          if (2 * ik != kk)
            t3 = randlc(&t1, t2);
          if (ik != 0)
            t3 = randlc(&t2, t2);
          kk = ik;
        }
      }
      vranlc(512, &t1, 1220703125.0, x);
      for (i = 0; i < 256; i++) {
        x1 = 2.0 * x[2 * i] - 1.0;
        x2 = 2.0 * x[2 * i + 1] - 1.0;
        t1 = x1 * x1 + x2 * x2;
        if (t1 <= 1.0) {
          t2 = sqrt(-2.0 * log(t1) / t1);
          t3 = x1 * t2;
          t4 = x2 * t2;
          if (fabs(t3) > fabs(t4))
            l = (int) fabs(t3);
          else
            l = (int) fabs(t4);
          q[l] = q[l] + 1.0;
          sx = sx + t3;
          sy = sy + t4;
        }
      }
    }
  }

  for (i = 0; i < 10; i++)
    gc = gc + q[i];

  printf("EP pairs %.1f\n", gc);
  printf("EP sx %.12e sy %.12e\n", sx, sy);
  for (i = 0; i < 10; i++)
    printf("EP q %d %.1f\n", i, q[i]);
  return 0;
}

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

int key_array[4096];
int key_buff1[2048];
int key_buff2[4096];
int bucket_size[16][64];
int bucket_ptrs[64];
int partial_verify_vals[5];
int test_index_array[5];

void rank(int iteration)
{
  int i, k, m, k1, k2, myid, num_threads;

  key_array[iteration] = iteration;
  key_array[iteration + 10] = 2048 - iteration;

  for (i = 0; i < 5; i++)
    partial_verify_vals[i] = key_array[test_index_array[i]];

  myid = 0;
  num_threads = 1;
  for (i = 0; i < 64; i++)
    bucket_size[myid][i] = 0;

  for (i = 0; i < 4096; i++)
    bucket_size[myid][key_array[i] >> 5]++;

  bucket_ptrs[0] = 0;
  for (k = 0; k < myid; k++)
    bucket_ptrs[0] += bucket_size[k][0];

  for (i = 1; i < 64; i++) {
    bucket_ptrs[i] = bucket_ptrs[i - 1];
    for (k = 0; k < myid; k++)
      bucket_ptrs[i] += bucket_size[k][i];
    for (k = myid; k < num_threads; k++)
      bucket_ptrs[i] += bucket_size[k][i - 1];
  }

  for (i = 0; i < 4096; i++) {
    k = key_array[i];
    key_buff2[bucket_ptrs[k >> 5]++] = k;
  }

  for (i = 0; i < 64; i++)
    for (k = myid + 1; k < num_threads; k++)
      bucket_ptrs[i] += bucket_size[k][i];

  for (i = 0; i < 64; i++) {
    k1 = i * 32;
    k2 = k1 + 32;
    for (k = k1; k < k2; k++)
      key_buff1[k] = 0;
    m = 0;
    if (i > 0)
      m = bucket_ptrs[i - 1];
    for (k = m; k < bucket_ptrs[i]; k++)
      key_buff1[key_buff2[k]]++;
    key_buff1[k1] += m;
    for (k = k1 + 1; k < k2; k++)
      key_buff1[k] += key_buff1[k - 1];
  }
}

int main(void)
{
  int i, iteration;
  long long seed, r1, r2, r3, r4, checksum;

  seed = 314159265;
  for (i = 0; i < 4096; i++) {
    seed = (seed * 1103515245 + 12345) % 2147483648;
    r1 = seed % 2048;
    seed = (seed * 1103515245 + 12345) % 2147483648;
    r2 = seed % 2048;
    seed = (seed * 1103515245 + 12345) % 2147483648;
    r3 = seed % 2048;
    seed = (seed * 1103515245 + 12345) % 2147483648;
    r4 = seed % 2048;
    key_array[i] = (int) ((r1 + r2 + r3 + r4) / 4);
  }
  for (i = 0; i < 5; i++)
    test_index_array[i] = (i * 811 + 7) % 4096;

  for (iteration = 1; iteration <= 10; iteration++)
    rank(iteration);

  checksum = 0;
  for (i = 0; i < 2048; i++)
    checksum = checksum + (long long) key_buff1[i] * (i % 13 + 1);
  for (i = 0; i < 5; i++)
    checksum = checksum + partial_verify_vals[i];
  printf("IS checksum %lld\n", checksum);
  printf("IS keys below 1024: %d\n", key_buff1[1023]);
  return 0;
}

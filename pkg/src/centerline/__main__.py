from centerline.cli import main

main()
